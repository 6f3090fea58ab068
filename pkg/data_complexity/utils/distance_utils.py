import numpy as np
from numba import njit, prange

JIT_OPTIONS = {
    "nogil": True,
    "cache": True
}


@njit(**JIT_OPTIONS)
def _point_distance(p: np.ndarray, q: np.ndarray) -> float:
    acc = 0.0
    for k in range(p.shape[0]):
        diff = p[k] - q[k]
        acc += diff * diff
    return np.sqrt(acc)


@njit(parallel=True, **JIT_OPTIONS)
def _pairwise_kernel(points: np.ndarray) -> np.ndarray:
    n = points.shape[0]
    out = np.zeros((n, n))
    # Rows are independent, so the result does not depend on the thread schedule
    for i in prange(n):
        for j in range(n):
            out[i, j] = _point_distance(points[i], points[j])
    return out


@njit(parallel=True, **JIT_OPTIONS)
def _cross_kernel(queries: np.ndarray, points: np.ndarray) -> np.ndarray:
    m = queries.shape[0]
    n = points.shape[0]
    out = np.zeros((m, n))
    for i in prange(m):
        for j in range(n):
            out[i, j] = _point_distance(queries[i], points[j])
    return out


def _as_matrix(points) -> np.ndarray:
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return arr


def euclidean_distance(p, q) -> float:
    """
    Calculate the Euclidean (L2) distance between two points.

    Args:
        p: First point, sequence of d reals
        q: Second point, sequence of d reals

    Returns:
        float: Non-negative distance

    Raises:
        ValueError: If the points have different dimensions
    """
    p_arr = np.ascontiguousarray(p, dtype=np.float64).ravel()
    q_arr = np.ascontiguousarray(q, dtype=np.float64).ravel()
    if p_arr.shape != q_arr.shape:
        raise ValueError(
            f"Dimension mismatch: {p_arr.shape[0]} vs {q_arr.shape[0]} coordinates"
        )
    return float(_point_distance(p_arr, q_arr))


def pairwise_distances(points) -> np.ndarray:
    """All-pairs distance matrix (n x n), symmetric with a zero diagonal."""
    return _pairwise_kernel(_as_matrix(points))


def cross_distances(queries, points) -> np.ndarray:
    """Distances from each query (rows) to each reference point (columns)."""
    q_arr = _as_matrix(queries)
    p_arr = _as_matrix(points)
    if q_arr.shape[1] != p_arr.shape[1]:
        raise ValueError(
            f"Dimension mismatch: {q_arr.shape[1]} vs {p_arr.shape[1]} coordinates"
        )
    return _cross_kernel(q_arr, p_arr)
