"""Study-level properties on generated collections at full scale."""
import pytest
import numpy as np

from data_complexity.analysis.profiler import compute_profile
from data_complexity.analysis.study import group_separation, linear_separability_census, pca
from data_complexity.measures.linear import l2_linear_error
from data_complexity.measures.neighbors import n3_loo_nn_error
from data_complexity.measures.topology import t1_adherence_fraction
from data_complexity.models.profile import ProfileTable
from data_complexity.synth.generators import GeneratorSpec, gen_random_labeling, generate
from data_complexity.utils.distance_utils import pairwise_distances

def profile_table(specs, group=None, table=None):
    table = table if table is not None else ProfileTable()
    for spec in specs:
        table.add(compute_profile(generate(spec), seed=spec.seed, group=group))
    return table

def linear_margin_specs(count, n_per_class):
    """Cycles d over 2, 5, 10 and the margin over 0.02, 0.2; seed k for problem k."""
    return [
        GeneratorSpec(
            kind="linear-margin",
            dim=(2, 5, 10)[k % 3],
            n_per_class=n_per_class,
            margin=(0.02, 0.2)[(k // 3) % 2],
            seed=k
        )
        for k in range(count)
    ]

def structured_specs(count, n_per_class):
    """Checkerboards and rings, half each."""
    half = count // 2
    specs = [GeneratorSpec(kind="checkerboard", n_per_class=n_per_class, seed=seed) for seed in range(half)]
    specs += [GeneratorSpec(kind="rings", n_per_class=n_per_class, seed=seed) for seed in range(count - half)]
    return specs

@pytest.fixture(scope="module")
def separable_table():
    return profile_table(linear_margin_specs(50, n_per_class=200), "separable")

@pytest.fixture(scope="module")
def nonseparable_table():
    return profile_table(structured_specs(50, n_per_class=100), "nonseparable")

@pytest.fixture(scope="module")
def grouped_table():
    table = ProfileTable()
    separable = [
        GeneratorSpec(kind="linear-margin", dim=2, n_per_class=100, margin=0.05, seed=seed) for seed in range(30)
    ]
    random = [GeneratorSpec(kind="random-labeling", dim=2, n_per_class=100, seed=seed) for seed in range(30)]
    profile_table(separable, "separable", table)
    profile_table(structured_specs(30, n_per_class=100), "nonseparable", table)
    profile_table(random, "random", table)
    return table

@pytest.fixture(scope="module")
def random_labelings():
    """N3, L2 and T1 of 20 random labelings per dimensionality, 200 points per class."""
    results = {}
    for d in (1, 2, 5, 10):
        rows = []
        for seed in range(20):
            ds = gen_random_labeling(d, 200, seed=seed)
            distances = pairwise_distances(ds.points)
            rows.append((n3_loo_nn_error(ds, distances), l2_linear_error(ds), t1_adherence_fraction(ds, distances)))
        results[d] = np.array(rows)
    return results

# --- Linear Separability Census ---

def test_margin_problems_are_separable(separable_table):
    assert len(separable_table) == 50
    assert all(row["L1"] <= 1e-9 for row in separable_table.rows)
    assert all(row["L2"] == 0.0 for row in separable_table.rows)
    census = linear_separability_census(separable_table)
    assert (census.separable, census.total) == (50, 50)

def test_curved_problems_are_not_separable(nonseparable_table):
    l1 = nonseparable_table.column("L1")
    assert l1.size == 50
    assert np.sum(l1 > 1e-6) >= 48
    assert linear_separability_census(nonseparable_table).separable <= 2

# --- Random Labelings ---

@pytest.mark.parametrize("d", [1, 2, 5, 10])
def test_random_labeling_nn_error_near_half(random_labelings, d):
    n3 = random_labelings[d][:, 0]
    assert np.sum((n3 >= 0.40) & (n3 <= 0.60)) >= 18

def test_random_labeling_training_error(random_labelings):
    l2 = np.concatenate([rows[:, 1] for rows in random_labelings.values()])
    assert l2.mean() >= 0.35

@pytest.mark.parametrize("d", [2, 5, 10])
def test_random_labeling_balls_are_kept(random_labelings, d):
    assert np.all(random_labelings[d][:, 2] >= 0.95)

# --- Group Separation ---

def test_group_sizes(grouped_table):
    assert [grouped_table.groups.count(g) for g in ("separable", "nonseparable", "random")] == [30, 30, 30]

def test_nn_error_orders_all_three_groups(grouped_table):
    result = group_separation(grouped_table, "N3")
    assert result.mean("separable") < result.mean("nonseparable") < result.mean("random")
    assert result.separated is True

def test_linear_error_orders_groups(grouped_table):
    result = group_separation(grouped_table, "L2")
    assert result.mean("separable") == 0.0
    assert result.mean("separable") < result.mean("nonseparable")
    assert result.mean("separable") < result.mean("random")
    random_l2 = [row["L2"] for row, group in zip(grouped_table.rows, grouped_table.groups) if group == "random"]
    assert np.mean(random_l2) >= 0.35

def test_overlap_volume_ranking(grouped_table):
    f2 = group_separation(grouped_table, "F2")
    assert f2.mean("separable") <= f2.mean("random")
    for measure in ("N1", "N3", "L2"):
        result = group_separation(grouped_table, measure)
        assert result.mean("separable") < result.mean("random"), measure

# --- Row Order ---

def test_pca_ignores_row_order(grouped_table):
    order = np.random.default_rng(8).permutation(len(grouped_table))
    shuffled = ProfileTable(
        rows=[grouped_table.rows[k] for k in order],
        groups=[grouped_table.groups[k] for k in order]
    )
    first = pca(grouped_table)
    second = pca(shuffled)
    assert np.allclose(first.fractions, second.fractions, atol=1e-9)
    assert np.allclose(first.eigenvalues, second.eigenvalues, atol=1e-9)
    assert np.allclose(np.abs(first.loadings[:, 0]), np.abs(second.loadings[:, 0]), atol=1e-6)
