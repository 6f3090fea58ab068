"""
Distance-graph measures: MST boundary fraction (N1), intra/inter nearest-neighbor
distance ratio (N2), leave-one-out 1NN error (N3) and 1NN nonlinearity (N4).

All measures work from the exact all-pairs distance matrix. Nearest-neighbor
ties go to the lowest point index.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple
import logging
import math

import numpy as np
from numba import njit

from data_complexity.measures.linear import interpolated_test_set
from data_complexity.models.dataset import Dataset
from data_complexity.utils.distance_utils import JIT_OPTIONS, cross_distances, pairwise_distances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeList:
    """Weighted undirected edges (i, j, weight) with i < j over n nodes."""
    edges: Tuple[Tuple[int, int, float], ...]
    n: int

    @property
    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j, _ in self.edges]


@dataclass(frozen=True, eq=False)
class NeighborTable:
    """
    Nearest same-class and opposite-class neighbor of every point.

    Intra entries are -1 / NaN for points whose class has no other member.
    """
    intra_index: np.ndarray
    intra_distance: np.ndarray
    inter_index: np.ndarray
    inter_distance: np.ndarray


@njit(**JIT_OPTIONS)
def _prim_kernel(distances: np.ndarray) -> np.ndarray:
    n = distances.shape[0]
    in_tree = np.zeros(n, dtype=np.bool_)
    best = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    edges = np.empty((n - 1, 2), dtype=np.int64)

    in_tree[0] = True
    for v in range(1, n):
        best[v] = distances[0, v]
        parent[v] = 0

    for k in range(n - 1):
        chosen = -1
        chosen_lo = -1
        chosen_hi = -1
        for v in range(n):
            if in_tree[v]:
                continue
            lo = min(parent[v], v)
            hi = max(parent[v], v)
            if chosen == -1 or best[v] < best[chosen] or (
                best[v] == best[chosen]
                and (lo < chosen_lo or (lo == chosen_lo and hi < chosen_hi))
            ):
                chosen = v
                chosen_lo = lo
                chosen_hi = hi
        in_tree[chosen] = True
        edges[k, 0] = chosen_lo
        edges[k, 1] = chosen_hi

        for v in range(n):
            if in_tree[v]:
                continue
            d = distances[chosen, v]
            if d < best[v]:
                best[v] = d
                parent[v] = chosen
            elif d == best[v]:
                # Equal weights keep the lexicographically smaller edge
                lo_new = min(chosen, v)
                hi_new = max(chosen, v)
                lo_old = min(parent[v], v)
                hi_old = max(parent[v], v)
                if lo_new < lo_old or (lo_new == lo_old and hi_new < hi_old):
                    parent[v] = chosen
    return edges


def minimum_spanning_tree(points, distances: Optional[np.ndarray] = None) -> EdgeList:
    """
    Minimum spanning tree of the complete Euclidean graph over the points.

    Prim's algorithm from node 0 with a deterministic scan: among equal-weight
    candidate edges the lexicographically smallest (i, j) is taken.

    Raises:
        ValueError: If fewer than two points are given
    """
    if distances is None:
        distances = pairwise_distances(points)
    n = distances.shape[0]
    if n < 2:
        raise ValueError("minimum spanning tree needs at least two points")
    raw = _prim_kernel(np.ascontiguousarray(distances))
    edges = tuple(
        (int(i), int(j), float(distances[i, j])) for i, j in raw
    )
    return EdgeList(edges=edges, n=n)


def n1_boundary_fraction(ds: Dataset, distances: Optional[np.ndarray] = None) -> float:
    """Fraction of points incident to a cross-class edge of the class-blind MST (N1)."""
    if ds.n < 2:
        raise ValueError("N1 needs at least two points")
    mst = minimum_spanning_tree(ds.points, distances)
    labels = ds.labels
    boundary = set()
    for i, j, _ in mst.edges:
        if labels[i] != labels[j]:
            boundary.update((i, j))
    return len(boundary) / ds.n


def _masked_argmin(distances: np.ndarray, mask: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Row-wise argmin over masked columns; lowest index wins ties, -1 when a row is empty."""
    masked = np.where(mask, distances, np.inf)
    index = np.argmin(masked, axis=1)
    value = masked[np.arange(masked.shape[0]), index]
    empty = ~mask.any(axis=1)
    index = np.where(empty, -1, index)
    value = np.where(empty, np.nan, value)
    return index, value


def neighbor_table(ds: Dataset, distances: Optional[np.ndarray] = None) -> NeighborTable:
    """Nearest intra-class (self excluded) and inter-class neighbor of every point."""
    if distances is None:
        distances = pairwise_distances(ds.points)
    labels = ds.label_array()
    same = labels[:, None] == labels[None, :]
    not_self = ~np.eye(ds.n, dtype=bool)
    intra_index, intra_distance = _masked_argmin(distances, same & not_self)
    inter_index, inter_distance = _masked_argmin(distances, ~same)
    return NeighborTable(intra_index, intra_distance, inter_index, inter_distance)


def n2_intra_inter_ratio(ds: Dataset, distances: Optional[np.ndarray] = None) -> float:
    """
    Ratio of the average intra-class to the average inter-class NN distance (N2).

    Points of a singleton class have no intra-class neighbor and are left out of
    the intra average; when both classes are singletons the intra average is
    taken as 0. A zero inter-class average yields +inf.
    """
    table = neighbor_table(ds, distances)
    has_intra = table.intra_index >= 0
    if not has_intra.all():
        logger.info(f"{ds.name}: {int((~has_intra).sum())} singleton-class point(s) left out of the N2 intra average")
    inter_mean = float(np.mean(table.inter_distance))
    if inter_mean == 0:
        logger.info(f"{ds.name}: every point coincides with an enemy, N2 is infinite")
        return math.inf
    if not has_intra.any():
        logger.info(f"{ds.name}: no point has an intra-class neighbor, N2 intra average is 0")
        return 0.0
    intra_mean = float(np.mean(table.intra_distance[has_intra]))
    return intra_mean / inter_mean


def n3_loo_nn_error(ds: Dataset, distances: Optional[np.ndarray] = None) -> float:
    """Leave-one-out error rate of the 1NN classifier (N3)."""
    if ds.n < 2:
        raise ValueError("N3 needs at least two points")
    if distances is None:
        distances = pairwise_distances(ds.points)
    others = ~np.eye(ds.n, dtype=bool)
    nearest, _ = _masked_argmin(distances, others)
    labels = ds.label_array()
    return float(np.mean(labels[nearest] != labels))


def n4_nn_nonlinearity(ds: Dataset, seed: int) -> float:
    """Error rate of the 1NN classifier on an interpolated test set of size n (N4)."""
    test = interpolated_test_set(ds, ds.n, seed)
    nearest = np.argmin(cross_distances(test.points, ds.points), axis=1)
    predicted = ds.label_array()[nearest]
    return float(np.mean(predicted != np.asarray(test.labels, dtype=object)))
