"""
Manifold measures: retained adherence balls (T1) and points per dimension (T2).
"""
from dataclasses import dataclass
from typing import List, Optional
import logging

import numpy as np

from data_complexity.models.dataset import Dataset, split_classes
from data_complexity.utils.distance_utils import pairwise_distances

logger = logging.getLogger(__name__)

# Relative slack on d(i, j) + r_i <= r_j; containment is an equality case for collinear centers
CONTAINMENT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class AdherenceBall:
    """
    Ball centered at a training point, grown until it reaches the other class.

    Attributes:
        center_index: Index of the center point
        radius: Distance from the center to its nearest opposite-class point
        retained: False when the ball lies inside another ball of its class
    """
    center_index: int
    radius: float
    retained: bool


def _contained(distances: np.ndarray, radii: np.ndarray, members: np.ndarray) -> np.ndarray:
    """
    Containment flags for the balls of one class.

    Ball i is removed when a same-class ball j satisfies d(i, j) + r_i <= r_j and
    either r_j > r_i or (r_j == r_i and j < i). A zero-radius ball is only
    removed by a ball centered at the same location.
    """
    d = distances[np.ix_(members, members)]
    r = radii[members]
    inside = d + r[:, None] <= r[None, :] * (1.0 + CONTAINMENT_TOLERANCE)
    larger = r[None, :] > r[:, None]
    tie = (r[None, :] == r[:, None]) & (members[None, :] < members[:, None])
    covers = inside & (larger | tie)
    np.fill_diagonal(covers, False)
    zero = r == 0
    covers[zero] &= d[zero] == 0
    return covers.any(axis=1)


def adherence_balls(ds: Dataset, distances: Optional[np.ndarray] = None) -> List[AdherenceBall]:
    """One ball per point with its radius and whether it survives containment removal."""
    if distances is None:
        distances = pairwise_distances(ds.points)
    split = split_classes(ds)
    radii = np.empty(ds.n)
    removed = np.zeros(ds.n, dtype=bool)
    for own, other in (
        (split.class1_indices, split.class2_indices),
        (split.class2_indices, split.class1_indices)
    ):
        radii[own] = distances[np.ix_(own, other)].min(axis=1)
    for own in (split.class1_indices, split.class2_indices):
        removed[own] = _contained(distances, radii, own)
    return [
        AdherenceBall(center_index=i, radius=float(radii[i]), retained=not removed[i])
        for i in range(ds.n)
    ]


def t1_adherence_fraction(ds: Dataset, distances: Optional[np.ndarray] = None) -> float:
    """Fraction of points whose adherence ball is retained (T1)."""
    if ds.n < 2:
        raise ValueError("T1 needs at least two points")
    balls = adherence_balls(ds, distances)
    retained = sum(ball.retained for ball in balls)
    logger.debug(f"{ds.name}: {ds.n - retained} of {ds.n} adherence balls removed")
    return retained / ds.n


def t2_points_per_dimension(ds: Dataset) -> float:
    """Number of points over number of features (T2)."""
    return ds.n / ds.dim
