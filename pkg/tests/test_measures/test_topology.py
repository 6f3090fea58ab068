import pytest
import numpy as np

from data_complexity.measures.topology import (
    adherence_balls,
    t1_adherence_fraction,
    t2_points_per_dimension
)
from data_complexity.models.dataset import validate_dataset
from data_complexity.utils.distance_utils import pairwise_distances

def one_dimensional(a, b):
    return validate_dataset([[v] for v in a + b], ["A"] * len(a) + ["B"] * len(b))

def greedy_survivors(ds):
    """Removal in decreasing-radius order against surviving balls only."""
    balls = adherence_balls(ds)
    distances = pairwise_distances(ds.points)
    order = sorted(range(ds.n), key=lambda i: (-balls[i].radius, i))
    survivors = []
    for i in order:
        contained = any(
            ds.labels[j] == ds.labels[i]
            and distances[i, j] + balls[i].radius <= balls[j].radius
            and (balls[i].radius > 0 or distances[i, j] == 0)
            for j in survivors
        )
        if not contained:
            survivors.append(i)
    return sorted(survivors)

# --- Adherence Balls ---

def test_adherence_ball_radii():
    balls = adherence_balls(one_dimensional([0, 1], [10, 11]))
    assert [b.radius for b in balls] == [10.0, 9.0, 9.0, 10.0]
    assert [b.retained for b in balls] == [True, False, False, True]
    assert [b.center_index for b in balls] == [0, 1, 2, 3]

# --- T1 ---

def test_t1_hand_computed():
    assert t1_adherence_fraction(one_dimensional([0, 1], [10, 11])) == 0.5
    assert t1_adherence_fraction(one_dimensional([0, 2], [1, 3])) == 1.0
    assert t1_adherence_fraction(one_dimensional([0], [1])) == 1.0

def test_t1_identical_balls_keep_one():
    """Duplicate points give identical balls; only the lowest index survives."""
    ds = one_dimensional([0, 0, 0], [5])
    balls = adherence_balls(ds)
    assert [b.retained for b in balls] == [True, False, False, True]

def test_t1_zero_radius_balls():
    """Coincident enemies give zero radii; such balls are only removed at the same location."""
    ds = validate_dataset([[0.0], [0.0], [1.0], [0.0]], ["A", "A", "A", "B"])
    balls = adherence_balls(ds)
    assert [b.radius for b in balls] == [0.0, 0.0, 1.0, 0.0]
    assert [b.retained for b in balls] == [True, False, True, True]

def test_t1_matches_greedy_removal():
    rng = np.random.default_rng(6)
    for _ in range(20):
        points = rng.integers(0, 6, size=(10, 1)).astype(float)
        ds = validate_dataset(points, ["A", "B"] + list(rng.choice(["A", "B"], size=8)))
        retained = [b.center_index for b in adherence_balls(ds) if b.retained]
        assert retained == greedy_survivors(ds)

def test_t1_invariance():
    rng = np.random.default_rng(13)
    points = rng.random((30, 1))
    labels = ["A", "B"] + list(rng.choice(["A", "B"], size=28))
    ds = validate_dataset(points, labels)
    value = t1_adherence_fraction(ds)

    assert t1_adherence_fraction(ds.with_points(ds.points * 4.0)) == value
    assert t1_adherence_fraction(ds.with_labels(["B" if l == "A" else "A" for l in labels])) == value
    assert t1_adherence_fraction(ds.subset(rng.permutation(30))) == value

def test_t1_random_plane_keeps_nearly_all():
    """Containment in two or more dimensions needs exact collinearity."""
    rng = np.random.default_rng(3)
    ds = validate_dataset(rng.random((100, 2)), ["A", "B"] * 50)
    assert t1_adherence_fraction(ds) >= 0.95

# --- T2 ---

@pytest.mark.parametrize("n,d,expected", [(2000, 10, 200.0), (2000, 100, 20.0), (4, 8, 0.5)])
def test_t2(n, d, expected):
    points = np.zeros((n, d))
    points[:, 0] = np.arange(n)
    ds = validate_dataset(points, ["A", "B"] * (n // 2))
    assert t2_points_per_dimension(ds) == expected
    assert t2_points_per_dimension(ds) * d == n
