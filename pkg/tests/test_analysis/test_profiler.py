import math

import pytest
import numpy as np

from data_complexity.analysis import profiler
from data_complexity.analysis.config import MeasureConfig
from data_complexity.analysis.profiler import MeasureError, compute_profile
from data_complexity.measures.simplex import SOLVER_ID, LPNumericError
from data_complexity.models.dataset import validate_dataset
from data_complexity.models.profile import MEASURES
from data_complexity.utils.random_utils import RNG_ALGORITHM

def one_dimensional(a, b, name="problem"):
    return validate_dataset([[v] for v in a + b], ["A"] * len(a) + ["B"] * len(b), name=name)

@pytest.fixture
def blobs():
    rng = np.random.default_rng(21)
    points = np.vstack([rng.normal(0.0, 1.0, (25, 3)), rng.normal(1.5, 1.0, (25, 3))])
    return validate_dataset(points, ["A"] * 25 + ["B"] * 25, name="blobs")

# --- Hand-Computed Profile ---

def test_two_clusters_profile():
    profile = compute_profile(one_dimensional([0, 1], [10, 11]), seed=4)
    expected = {
        "F1": 200.0, "F2": 0.0, "F3": 1.0,
        "L1": 0.0, "L2": 0.0, "L3": 0.0,
        "N1": 0.5, "N2": 4 / 38, "N3": 0.0, "N4": 0.0,
        "T1": 0.5, "T2": 4.0,
    }
    for measure, value in expected.items():
        assert profile[measure] == pytest.approx(value, abs=1e-9), measure
    assert profile.flags == ()
    assert (profile.n, profile.d, profile.seed) == (4, 1, 4)

def test_provenance(blobs):
    profile = compute_profile(blobs, group="random")
    assert profile.name == "blobs"
    assert profile.solver_id == SOLVER_ID
    assert profile.rng_algorithm == RNG_ALGORITHM
    assert profile.variance_convention == "population"
    assert profile.group == "random"
    assert profile.seed == 0

# --- Flags ---

def test_infinite_fisher_flag():
    profile = compute_profile(one_dimensional([0, 0], [1, 1]))
    assert profile["F1"] == math.inf
    assert "F1_infinite" in profile.flags

def test_coincident_points_flags():
    """Every point at the origin: inter-class distances and the diagonal vanish."""
    profile = compute_profile(one_dimensional([0, 0], [0, 0]))
    assert profile["N2"] == math.inf
    assert set(profile.flags) == {"N2_infinite", "L1_unit_diagonal"}

def test_singleton_class_flag():
    profile = compute_profile(one_dimensional([0], [1, 2]))
    assert "N2_singleton_excluded" in profile.flags
    assert profile["N2"] == pytest.approx(1.0 / (4 / 3))

def test_two_singleton_classes_flag():
    profile = compute_profile(one_dimensional([0], [3]))
    assert profile["N2"] == 0.0
    assert {"N2_singleton_excluded", "N2_no_intra_neighbors"} <= set(profile.flags)
    assert "N2_no_intra_neighbors" not in compute_profile(one_dimensional([0], [1, 2])).flags

def test_standardize_flag(blobs):
    profile = compute_profile(blobs, config=MeasureConfig(standardize=True))
    assert "standardized" in profile.flags
    assert profile["T2"] == pytest.approx(50 / 3)

# --- Determinism And Invariance ---

def test_profile_is_deterministic(blobs):
    assert compute_profile(blobs, seed=3) == compute_profile(blobs, seed=3)

def test_seed_only_affects_test_set_measures(blobs):
    first = compute_profile(blobs, seed=1)
    second = compute_profile(blobs, seed=2)
    for measure in MEASURES:
        if measure not in ("L3", "N4"):
            assert first[measure] == second[measure], measure

def test_config_seed_is_default(blobs):
    assert compute_profile(blobs, config=MeasureConfig(seed=5)).seed == 5
    assert compute_profile(blobs, seed=6, config=MeasureConfig(seed=5)).seed == 6

def test_point_order_invariance(blobs):
    order = np.random.default_rng(3).permutation(blobs.n)
    shuffled = validate_dataset(blobs.points[order], [blobs.labels[k] for k in order], name="blobs")
    first = compute_profile(blobs)
    second = compute_profile(shuffled)
    for measure in ("F1", "F2", "F3", "L1", "N1", "N2", "N3", "T1", "T2"):
        assert first[measure] == pytest.approx(second[measure], rel=1e-9, abs=1e-12), measure

def test_label_swap_invariance(blobs):
    swapped = blobs.with_labels(["B" if l == "A" else "A" for l in blobs.labels])
    first = compute_profile(blobs)
    second = compute_profile(swapped)
    for measure in ("F1", "F2", "F3", "N1", "N2", "N3", "T1", "T2"):
        assert first[measure] == pytest.approx(second[measure], rel=1e-12), measure

def test_solver_tolerances_come_from_config(blobs, monkeypatch):
    seen = []
    real_fit = profiler.fit_linear

    def recording_fit(ds, **tolerances):
        seen.append(tolerances)
        return real_fit(ds, **tolerances)

    monkeypatch.setattr(profiler, "fit_linear", recording_fit)
    compute_profile(blobs, config=MeasureConfig(pivot_tolerance=1e-10, separable_tolerance=1e-7))
    assert seen == [{"pivot_tolerance": 1e-10, "feasibility_tolerance": 1e-7}]

# --- Errors ---

def test_solver_failure_is_attributed(blobs, monkeypatch):
    def failing_fit(ds, **tolerances):
        raise LPNumericError("pivot below tolerance")

    monkeypatch.setattr(profiler, "fit_linear", failing_fit)
    with pytest.raises(MeasureError) as excinfo:
        compute_profile(blobs)
    assert excinfo.value.measure == "L1"
    assert excinfo.value.problem == "blobs"
    assert isinstance(excinfo.value.cause, LPNumericError)
    assert "blobs" in str(excinfo.value)
