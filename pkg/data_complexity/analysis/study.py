from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np
import pandas as pd

from data_complexity.models.profile import MEASURES, ProfileTable

logger = logging.getLogger(__name__)

MIN_ROWS = 3
RECOMMENDED_PCA_ROWS = len(MEASURES) + 1
JACOBI_TOLERANCE = 1e-12
SEPARABLE_GROUP = "separable"
RANDOM_GROUP = "random"


class AnalysisError(ValueError):
    """Too few usable rows (or a non-converging decomposition) in the study pipeline."""


@dataclass
class CorrelationResult:
    """
    Pearson correlations between measures over a profile table.

    Infinite values are excluded pairwise; undefined entries (zero variance or
    fewer than three usable rows for the pair) are NaN.

    Attributes:
        matrix: (12 x 12) symmetric correlation matrix
        measures: Measure order of rows and columns
        usable_rows: Rows used for each pair
        excluded_rows: Rows dropped from each pair for holding an infinity
        undefined: Measures whose own variance is zero
    """
    matrix: np.ndarray
    measures: Tuple[str, ...]
    usable_rows: np.ndarray
    excluded_rows: np.ndarray
    undefined: Tuple[str, ...] = ()

    def __getitem__(self, pair: Tuple[str, str]) -> float:
        i, j = (self.measures.index(m) for m in pair)
        return float(self.matrix[i, j])

    def defined_block(self) -> np.ndarray:
        """Sub-matrix over measures with defined variance."""
        keep = [i for i, m in enumerate(self.measures) if m not in self.undefined]
        return self.matrix[np.ix_(keep, keep)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.matrix, index=list(self.measures), columns=list(self.measures))


@dataclass
class PCAResult:
    """
    Principal components of the standardized measure columns.

    Attributes:
        loadings: (p x p) orthonormal matrix, one component per column
        eigenvalues: Variance carried by each component, nonincreasing
        fractions: eigenvalues normalized to sum to 1
        means: Column means used for standardization
        stds: Column standard deviations (population) used for standardization
        measures: Measures kept, in column order of means/stds and loading rows
        excluded_rows: Names of rows dropped for holding an infinity
        excluded_columns: Measures dropped for zero variance
        form: Always "correlation" (standardized columns)
        n_rows: Rows the decomposition was computed from
    """
    loadings: np.ndarray
    eigenvalues: np.ndarray
    fractions: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    measures: Tuple[str, ...]
    excluded_rows: Tuple[str, ...] = ()
    excluded_columns: Tuple[str, ...] = ()
    form: str = "correlation"
    n_rows: int = 0

    @property
    def n_components(self) -> int:
        return int(self.loadings.shape[1])

    def standardize(self, values: np.ndarray) -> np.ndarray:
        """Standardize a (rows x 12) measure matrix onto the kept columns."""
        columns = [MEASURES.index(m) for m in self.measures]
        return (np.asarray(values, dtype=np.float64)[:, columns] - self.means) / self.stds

    def loadings_frame(self) -> pd.DataFrame:
        names = [f"PC{k + 1}" for k in range(self.n_components)]
        return pd.DataFrame(self.loadings, index=list(self.measures), columns=names)


@dataclass
class GroupStats:
    count: int
    minimum: float
    mean: float
    maximum: float


@dataclass
class GroupSeparation:
    """
    One measure summarized per group tag.

    separated is True when the separable and random groups' value ranges do not
    overlap, None when either group is absent.
    """
    measure: str
    groups: Dict[str, GroupStats] = field(default_factory=dict)
    separated: Optional[bool] = None

    def mean(self, group: str) -> float:
        return self.groups[group].mean


@dataclass
class SeparabilityCensus:
    separable: int
    total: int
    tolerance: float

    @property
    def fraction(self) -> float:
        return self.separable / self.total if self.total else 0.0

    def __str__(self) -> str:
        return f"{self.separable}/{self.total}"


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson coefficient, NaN when either column has zero variance."""
    xc = x - x.mean()
    yc = y - y.mean()
    denominator = math.sqrt(float(np.dot(xc, xc)) * float(np.dot(yc, yc)))
    if denominator == 0:
        return math.nan
    return float(np.clip(np.dot(xc, yc) / denominator, -1.0, 1.0))


def correlation_matrix(table: ProfileTable) -> CorrelationResult:
    """
    Pearson correlation between every pair of measures.

    Rows where either measure of a pair is infinite are left out of that pair
    only. Zero-variance measures give NaN rows and columns (diagonal included).

    Raises:
        AnalysisError: If the table has fewer than three rows
    """
    if len(table) < MIN_ROWS:
        raise AnalysisError(f"correlation needs at least {MIN_ROWS} rows, got {len(table)}")
    values = table.matrix()
    finite = np.isfinite(values)
    p = len(MEASURES)
    matrix = np.full((p, p), math.nan)
    usable = np.zeros((p, p), dtype=np.int64)

    undefined = []
    for i in range(p):
        column = values[finite[:, i], i]
        usable[i, i] = column.size
        if column.size >= MIN_ROWS and np.ptp(column) > 0:
            matrix[i, i] = 1.0
        else:
            undefined.append(MEASURES[i])

    for i in range(p):
        for j in range(i + 1, p):
            rows = finite[:, i] & finite[:, j]
            usable[i, j] = usable[j, i] = int(rows.sum())
            if usable[i, j] < MIN_ROWS or MEASURES[i] in undefined or MEASURES[j] in undefined:
                continue
            matrix[i, j] = matrix[j, i] = _pearson(values[rows, i], values[rows, j])

    excluded = len(table) - usable
    if excluded.any():
        logger.info(f"correlation: excluded up to {int(excluded.max())} rows with infinite values")
    if undefined:
        logger.info(f"correlation: undefined for zero-variance measures {undefined}")
    return CorrelationResult(
        matrix=matrix,
        measures=MEASURES,
        usable_rows=usable,
        excluded_rows=excluded,
        undefined=tuple(undefined)
    )


def jacobi_eigh(
    matrix: np.ndarray,
    tolerance: float = JACOBI_TOLERANCE,
    max_sweeps: int = 100
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps over every off-diagonal pair until the off-diagonal Frobenius norm
    falls below the tolerance.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Eigenvalues (unsorted, diagonal order)
            and the matching eigenvectors as columns

    Raises:
        AnalysisError: If the matrix is not square and symmetric, or the
            iteration does not converge within max_sweeps
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise AnalysisError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12):
        raise AnalysisError("matrix is not symmetric")
    n = a.shape[0]
    vectors = np.eye(n)

    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off < tolerance:
            return np.diag(a).copy(), vectors
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p = vectors[:, p].copy()
                vec_q = vectors[:, q].copy()
                vectors[:, p] = c * vec_p - s * vec_q
                vectors[:, q] = s * vec_p + c * vec_q

    raise AnalysisError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def _orient(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive (first on ties)."""
    oriented = vectors.copy()
    for k in range(oriented.shape[1]):
        pivot = int(np.argmax(np.abs(oriented[:, k])))
        if oriented[pivot, k] < 0:
            oriented[:, k] = -oriented[:, k]
    return oriented


def pca(table: ProfileTable) -> PCAResult:
    """
    Principal component analysis of a profile table in correlation form.

    Rows holding an infinity are dropped, then zero-variance columns; the rest
    are standardized with the population standard deviation and the resulting
    correlation matrix is diagonalized by Jacobi iteration.

    Raises:
        AnalysisError: If fewer than three rows or fewer than one column survive
    """
    values = table.matrix()
    finite_rows = np.isfinite(values).all(axis=1)
    excluded_rows = tuple(row.name for row, ok in zip(table.rows, finite_rows) if not ok)
    values = values[finite_rows]
    if values.shape[0] < MIN_ROWS:
        raise AnalysisError(f"PCA needs at least {MIN_ROWS} finite rows, got {values.shape[0]}")
    if values.shape[0] < RECOMMENDED_PCA_ROWS:
        logger.warning(
            f"PCA on {values.shape[0]} rows; at least {RECOMMENDED_PCA_ROWS} are recommended"
        )
    if excluded_rows:
        logger.info(f"PCA: excluded {len(excluded_rows)} rows with infinite values")

    stds = values.std(axis=0)
    keep = stds > 0
    excluded_columns = tuple(m for m, k in zip(MEASURES, keep) if not k)
    if excluded_columns:
        logger.info(f"PCA: excluded zero-variance measures {list(excluded_columns)}")
    if not keep.any():
        raise AnalysisError("every measure has zero variance")

    kept = values[:, keep]
    means = kept.mean(axis=0)
    stds = stds[keep]
    z = (kept - means) / stds
    correlation = (z.T @ z) / z.shape[0]
    correlation = (correlation + correlation.T) / 2

    eigenvalues, vectors = jacobi_eigh(correlation)
    order = sorted(range(eigenvalues.size), key=lambda k: (-eigenvalues[k], k))
    eigenvalues = np.clip(eigenvalues[order], 0.0, None)
    loadings = _orient(vectors[:, order])
    total = eigenvalues.sum()

    return PCAResult(
        loadings=loadings,
        eigenvalues=eigenvalues,
        fractions=eigenvalues / total,
        means=means,
        stds=stds,
        measures=tuple(m for m, k in zip(MEASURES, keep) if k),
        excluded_rows=excluded_rows,
        excluded_columns=excluded_columns,
        n_rows=int(values.shape[0])
    )


def significant_components(result: PCAResult, threshold: float = 0.05) -> int:
    """Number of components explaining more than threshold of the variance."""
    return int(np.sum(result.fractions > threshold))


def project(result: PCAResult, table: ProfileTable, components: Optional[int] = None) -> pd.DataFrame:
    """
    Principal-component scores per problem.

    Rows with an infinite value in a kept measure get NaN scores.
    """
    k = result.n_components if components is None else min(components, result.n_components)
    z = result.standardize(table.matrix()) if len(table) else np.empty((0, len(result.measures)))
    scores = z @ result.loadings[:, :k]
    scores[~np.isfinite(z).all(axis=1)] = np.nan
    frame = pd.DataFrame(scores, columns=[f"PC{i + 1}" for i in range(k)])
    frame.insert(0, "name", [row.name for row in table.rows])
    frame["group"] = table.groups
    return frame


def group_separation(
    table: ProfileTable,
    measure: str,
    separable_group: str = SEPARABLE_GROUP,
    random_group: str = RANDOM_GROUP
) -> GroupSeparation:
    """Per-group min/mean/max of one measure and whether two groups' ranges are disjoint."""
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    column = table.column(measure)
    result = GroupSeparation(measure=measure)
    for group in table.group_names():
        values = column[[g == group for g in table.groups]]
        result.groups[group] = GroupStats(
            count=int(values.size),
            minimum=float(values.min()),
            mean=float(values.mean()),
            maximum=float(values.max())
        )
    if separable_group in result.groups and random_group in result.groups:
        first = result.groups[separable_group]
        second = result.groups[random_group]
        result.separated = first.maximum < second.minimum or second.maximum < first.minimum
    return result


def linear_separability_census(table: ProfileTable, tolerance: float = 1e-9) -> SeparabilityCensus:
    """Problems whose L1 is within tolerance of zero, out of all problems."""
    l1 = table.column("L1")
    return SeparabilityCensus(separable=int(np.sum(l1 <= tolerance)), total=len(table), tolerance=tolerance)


def group_means(table: ProfileTable, measures: Sequence[str] = MEASURES) -> pd.DataFrame:
    """Mean of each measure per group tag (rows: groups)."""
    frame = table.to_frame()
    frame = frame[frame["group"].notna()]
    return frame.groupby("group", sort=False)[list(measures)].mean()


def describe(result: PCAResult, threshold: float = 0.05) -> List[str]:
    """Human-readable PCA summary lines."""
    lines = [
        f"form: {result.form} ({result.n_rows} rows, {len(result.measures)} measures)",
        f"significant components (> {threshold:.0%}): {significant_components(result, threshold)}",
    ]
    for k, fraction in enumerate(result.fractions):
        lines.append(f"PC{k + 1}: {fraction:.4f}")
    if result.excluded_rows:
        lines.append(f"excluded rows: {', '.join(result.excluded_rows)}")
    if result.excluded_columns:
        lines.append(f"excluded measures: {', '.join(result.excluded_columns)}")
    return lines
