"""
Linear separability measures built on Smith's error-distance linear program:
L1 (normalized minimized error distance), L2 (training error of the LP
classifier) and L3 (its nonlinearity on within-class interpolations).
"""
from dataclasses import dataclass
from typing import Optional, Tuple
import logging

import numpy as np

from data_complexity.measures.simplex import (
    SOLVER_ID,
    LPNumericError,
    solve_standard_form
)
from data_complexity.models.dataset import Dataset, bounding_diagonal, split_classes
from data_complexity.utils.random_utils import make_rng

logger = logging.getLogger(__name__)

FEASIBILITY_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class LPInstance:
    """
    Smith's linear program: minimize a.t subject to Z^t w + t >= b, t >= 0.

    Attributes:
        Z: (d+1, n) matrix; column i is +x~_i for class 1 and -x~_i for class 2,
            where x~ appends a constant 1 to the point
        b: Margin targets, all ones
        a: Error costs, all ones
    """
    Z: np.ndarray
    b: np.ndarray
    a: np.ndarray

    @property
    def n(self) -> int:
        return int(self.Z.shape[1])

    @property
    def dim_aug(self) -> int:
        return int(self.Z.shape[0])


@dataclass(frozen=True, eq=False)
class LPSolution:
    """
    Solved state of an LPInstance.

    Attributes:
        w: Weight vector of length d+1 (last entry is the bias)
        t: Error vector of length n
        objective: Sum of the error entries
        status: "optimal" (numeric failures raise instead of returning)
        iterations: Simplex pivots used
        solver_id: Identity of the pivoting scheme
    """
    w: np.ndarray
    t: np.ndarray
    objective: float
    status: str = "optimal"
    iterations: int = 0
    solver_id: str = SOLVER_ID

    def residuals(self, lp: LPInstance) -> np.ndarray:
        """Z^t w + t - b; feasible solutions are >= -tolerance."""
        return lp.Z.T @ self.w + self.t - lp.b


@dataclass(frozen=True, eq=False)
class LinearFit:
    """LP solution of a dataset together with the class orientation it was trained on."""
    solution: LPSolution
    class1_label: str
    class2_label: str


@dataclass(frozen=True, eq=False)
class LabeledPoints:
    """
    Labeled points that need not contain both classes (an interpolated test set).
    """
    points: np.ndarray
    labels: Tuple[str, ...]

    @property
    def n(self) -> int:
        return int(self.points.shape[0])


def build_smith_system(ds: Dataset) -> LPInstance:
    """Signed, augmented point matrix of Smith's formulation; class 1 per split_classes."""
    split = split_classes(ds)
    augmented = np.hstack([ds.points, np.ones((ds.n, 1))])
    signs = np.full(ds.n, -1.0)
    signs[split.class1_indices] = 1.0
    Z = (augmented * signs[:, None]).T
    return LPInstance(Z=np.ascontiguousarray(Z), b=np.ones(ds.n), a=np.ones(ds.n))


def solve_lp(
    lp: LPInstance,
    pivot_tolerance: float = 1e-12,
    feasibility_tolerance: float = FEASIBILITY_TOLERANCE,
    max_pivots: Optional[int] = None
) -> LPSolution:
    """
    Optimal basic solution of Smith's program.

    The free weights are split as w = w+ - w- and surplus columns turn the
    inequalities into equalities; the error columns form a starting basis
    (w = 0, t = b), so no artificial variables are needed. The optimum must
    meet every margin constraint to within feasibility_tolerance, scaled by
    the largest coefficient magnitude.

    Raises:
        LPNumericError: When pivots vanish or the pivot budget runs out.
    """
    k, n = lp.dim_aug, lp.n
    A = np.hstack([lp.Z.T, -lp.Z.T, np.eye(n), -np.eye(n)])
    c = np.concatenate([np.zeros(2 * k), lp.a, np.zeros(n)])
    result = solve_standard_form(
        A, lp.b, c,
        pivot_tolerance=pivot_tolerance,
        max_pivots=max_pivots
    )
    w = result.x[:k] - result.x[k:2 * k]
    t = result.x[2 * k:2 * k + n]
    solution = LPSolution(
        w=w,
        t=t,
        objective=float(t.sum()),
        iterations=result.iterations
    )
    worst = float(solution.residuals(lp).min(initial=0.0))
    if worst < -feasibility_tolerance * max(1.0, float(np.abs(lp.Z).max())):
        raise LPNumericError(f"solution violates the margin constraints by {-worst:g}")
    logger.debug(f"LP solved: n={n}, objective={solution.objective:.6g}, pivots={result.iterations}")
    return solution


def fit_linear(
    ds: Dataset,
    pivot_tolerance: float = 1e-12,
    feasibility_tolerance: float = FEASIBILITY_TOLERANCE
) -> LinearFit:
    """Train the LP classifier shared by L1, L2 and L3."""
    split = split_classes(ds)
    solution = solve_lp(
        build_smith_system(ds),
        pivot_tolerance=pivot_tolerance,
        feasibility_tolerance=feasibility_tolerance
    )
    return LinearFit(solution, split.class1_label, split.class2_label)


def linear_scores(w: np.ndarray, points: np.ndarray) -> np.ndarray:
    """w . x~ for every row of points."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    w = np.asarray(w, dtype=np.float64)
    if w.shape[0] != points.shape[1] + 1:
        raise ValueError(f"weight vector has {w.shape[0]} entries for {points.shape[1]}-D points")
    return points @ w[:-1] + w[-1]


def classify_linear(w, x, labels: Tuple[str, str] = ("c1", "c2")) -> str:
    """
    Class predicted by the hyperplane w for the point x.

    Positive score predicts labels[0]; zero and negative scores predict labels[1].
    """
    score = linear_scores(w, np.atleast_1d(np.asarray(x, dtype=np.float64))[None, :])[0]
    return labels[0] if score > 0 else labels[1]


def _linear_error_rate(fit: LinearFit, points: np.ndarray, labels) -> float:
    if len(labels) == 0:
        return 0.0
    predicted_first = linear_scores(fit.solution.w, points) > 0
    actual_first = np.asarray(labels, dtype=object) == fit.class1_label
    return float(np.mean(predicted_first != actual_first))


def l1_error_distance(ds: Dataset, fit: Optional[LinearFit] = None) -> float:
    """
    Minimized sum of error distances, normalized by the number of points and by
    the bounding-box diagonal (L1). A zero diagonal is replaced by 1.
    """
    fit = fit or fit_linear(ds)
    diagonal = bounding_diagonal(ds)
    if diagonal == 0:
        logger.info(f"{ds.name}: all points coincide, L1 uses a unit diagonal")
        diagonal = 1.0
    return fit.solution.objective / ds.n / diagonal


def is_linearly_separable(
    ds: Dataset,
    tolerance: float = FEASIBILITY_TOLERANCE,
    fit: Optional[LinearFit] = None
) -> bool:
    """True when L1 vanishes within tolerance; a fresh fit checks feasibility at the same tolerance."""
    fit = fit or fit_linear(ds, feasibility_tolerance=tolerance)
    return l1_error_distance(ds, fit) <= tolerance


def l2_linear_error(ds: Dataset, fit: Optional[LinearFit] = None) -> float:
    """Training-set error rate of the LP classifier (L2)."""
    fit = fit or fit_linear(ds)
    return _linear_error_rate(fit, ds.points, ds.labels)


def interpolated_test_set(ds: Dataset, m: int, seed: int) -> LabeledPoints:
    """
    Test points interpolated between random same-class pairs.

    Each of the m draws picks a class with probability proportional to its
    size, two of its points uniformly with replacement, and returns
    p + alpha (q - p) with alpha uniform in [0, 1].
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    split = split_classes(ds)
    members = [split.class1_indices, split.class2_indices]
    class_labels = [split.class1_label, split.class2_label]

    rng = make_rng(seed)
    pick_second = rng.random(m) >= split.n1 / ds.n
    first_pos = rng.random(m)
    second_pos = rng.random(m)
    alpha = rng.random(m)

    points = np.empty((m, ds.dim))
    labels = []
    for k in range(m):
        cls = int(pick_second[k])
        pool = members[cls]
        p = pool[min(int(first_pos[k] * pool.shape[0]), pool.shape[0] - 1)]
        q = pool[min(int(second_pos[k] * pool.shape[0]), pool.shape[0] - 1)]
        points[k] = ds.points[p] + alpha[k] * (ds.points[q] - ds.points[p])
        labels.append(class_labels[cls])
    return LabeledPoints(points=points, labels=tuple(labels))


def l3_linear_nonlinearity(ds: Dataset, seed: int, fit: Optional[LinearFit] = None) -> float:
    """Error rate of the LP classifier on an interpolated test set of size n (L3)."""
    fit = fit or fit_linear(ds)
    test = interpolated_test_set(ds, ds.n, seed)
    return _linear_error_rate(fit, test.points, test.labels)
