from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

logger = logging.getLogger(__name__)


class DatasetValidationError(ValueError):
    """Raised when raw rows and labels do not form a valid two-class dataset."""

    def __init__(self, message: str, row_index: Optional[int] = None):
        self.row_index = row_index
        if row_index is not None:
            message = f"row {row_index}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Immutable labeled point set in d-dimensional real space with exactly two classes.

    Instances are built through validate_dataset(); the arrays are marked
    read-only so a Dataset can be shared freely between threads and measures.

    Attributes:
        points: (n, d) float array of coordinates
        labels: Tuple of n class tags (strings)
        name: Text identifier used in reports
    """
    points: np.ndarray
    labels: Tuple[str, ...]
    name: str = "dataset"

    def __post_init__(self):
        """Validate shape and label invariants."""
        if self.points.ndim != 2 or self.points.shape[0] == 0:
            raise DatasetValidationError("points must be a non-empty (n, d) array")
        if self.points.shape[1] < 1:
            raise DatasetValidationError("dim must be at least 1")
        if len(self.labels) != self.points.shape[0]:
            raise DatasetValidationError(
                f"{len(self.labels)} labels for {self.points.shape[0]} points"
            )
        if len(set(self.labels)) != 2:
            raise DatasetValidationError("expected exactly two classes")
        if not np.all(np.isfinite(self.points)):
            raise DatasetValidationError("points must be finite")
        self.points.setflags(write=False)

    @property
    def n(self) -> int:
        """Number of points."""
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        """Number of features."""
        return int(self.points.shape[1])

    @property
    def classes(self) -> Tuple[str, str]:
        """The two class tags in reporting order (lexicographically smaller first)."""
        first, second = sorted(set(self.labels))
        return first, second

    def label_array(self) -> np.ndarray:
        """Labels as a numpy array of strings."""
        return np.asarray(self.labels, dtype=object)

    def class_points(self, label: str) -> np.ndarray:
        """Points belonging to one class."""
        mask = self.label_array() == label
        if not mask.any():
            raise KeyError(f"Unknown class {label!r}")
        return self.points[mask]

    def with_points(self, points: np.ndarray, name: Optional[str] = None) -> "Dataset":
        """Same labels over transformed coordinates."""
        return validate_dataset(points, self.labels, name=name or self.name)

    def with_labels(self, labels: Sequence, name: Optional[str] = None) -> "Dataset":
        """Same coordinates with a new labeling."""
        return validate_dataset(self.points, labels, name=name or self.name)

    def subset(self, indices: Sequence[int], name: Optional[str] = None) -> "Dataset":
        """Dataset restricted to the given point indices."""
        idx = np.asarray(indices, dtype=int)
        return validate_dataset(
            self.points[idx],
            [self.labels[i] for i in idx],
            name=name or self.name
        )


@dataclass(frozen=True, eq=False)
class ClassSplit:
    """Index partition of a Dataset by class, class 1 being the smaller label."""
    class1_label: str
    class2_label: str
    class1_indices: np.ndarray
    class2_indices: np.ndarray

    @property
    def n1(self) -> int:
        return int(self.class1_indices.shape[0])

    @property
    def n2(self) -> int:
        return int(self.class2_indices.shape[0])


@dataclass(frozen=True, eq=False)
class FeatureStats:
    """
    Per-feature, per-class summary statistics.

    Every array has shape (2, d); row 0 is class 1 and row 1 is class 2 of the
    dataset's ClassSplit. Variances use the population convention (divide by
    the class count), so a single-point class has variance 0.
    """
    means: np.ndarray
    variances: np.ndarray
    minimums: np.ndarray
    maximums: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.means.shape[1])


def validate_dataset(rows, labels, name: str = "dataset") -> Dataset:
    """
    Validate raw rows and labels into an immutable Dataset.

    Args:
        rows: Sequence of real vectors of uniform length
        labels: Sequence of class tags, one per row
        name: Identifier carried into reports

    Returns:
        Dataset: Validated dataset

    Raises:
        DatasetValidationError: On empty input, ragged rows, non-finite values,
            label count mismatch or a label set that is not exactly two classes.
            The message names the offending row index where one exists.
    """
    if isinstance(rows, np.ndarray):
        row_list = list(rows) if rows.ndim == 2 else [np.atleast_1d(r) for r in rows]
    else:
        row_list = list(rows)
    label_list = [str(label) for label in labels]

    if not row_list:
        raise DatasetValidationError("no rows given")

    width = len(np.atleast_1d(row_list[0]))
    if width < 1:
        raise DatasetValidationError("rows must have at least one coordinate", 0)

    matrix = np.empty((len(row_list), width), dtype=np.float64)
    for i, row in enumerate(row_list):
        coords = np.atleast_1d(np.asarray(row, dtype=np.float64))
        if coords.shape[0] != width:
            raise DatasetValidationError(
                f"has {coords.shape[0]} coordinates, expected {width}", i
            )
        if not np.all(np.isfinite(coords)):
            raise DatasetValidationError("contains a non-finite coordinate", i)
        matrix[i] = coords

    if len(label_list) != len(row_list):
        raise DatasetValidationError(
            f"label count {len(label_list)} does not match row count {len(row_list)}",
            min(len(label_list), len(row_list))
        )

    seen: List[str] = []
    for i, label in enumerate(label_list):
        if label not in seen:
            seen.append(label)
            if len(seen) > 2:
                raise DatasetValidationError(
                    f"expected exactly two classes, found a third label {label!r}", i
                )
    if len(seen) < 2:
        raise DatasetValidationError(
            f"expected exactly two classes, found only {seen[0]!r}"
        )

    return Dataset(points=matrix, labels=tuple(label_list), name=name)


def split_classes(ds: Dataset) -> ClassSplit:
    """Partition point indices by label, class 1 being the lexicographically smaller label."""
    first, second = ds.classes
    labels = ds.label_array()
    return ClassSplit(
        class1_label=first,
        class2_label=second,
        class1_indices=np.flatnonzero(labels == first),
        class2_indices=np.flatnonzero(labels == second)
    )


def feature_stats(ds: Dataset) -> FeatureStats:
    """Per-feature mean, population variance, min and max for each class."""
    split = split_classes(ds)
    groups = [ds.points[split.class1_indices], ds.points[split.class2_indices]]
    return FeatureStats(
        means=np.vstack([g.mean(axis=0) for g in groups]),
        variances=np.vstack([g.var(axis=0) for g in groups]),
        minimums=np.vstack([g.min(axis=0) for g in groups]),
        maximums=np.vstack([g.max(axis=0) for g in groups])
    )


def bounding_diagonal(ds: Dataset) -> float:
    """Length of the diagonal of the axis-aligned box enclosing all points."""
    extent = ds.points.max(axis=0) - ds.points.min(axis=0)
    return float(np.sqrt(np.sum(extent ** 2)))


def standardize_dataset(ds: Dataset) -> Dataset:
    """
    Z-score every feature using the population standard deviation.

    Constant features map to 0. Off by default; the measures are defined on the
    data as given.
    """
    mean = ds.points.mean(axis=0)
    std = ds.points.std(axis=0)
    scale = np.where(std > 0, std, 1.0)
    constant = int(np.sum(std == 0))
    if constant:
        logger.info(f"{ds.name}: {constant} constant feature(s) left at zero after standardizing")
    return ds.with_points((ds.points - mean) / scale)


def restrict_to_classes(rows, labels, first: str, second: str, name: str = "dataset") -> Dataset:
    """Validated two-class sub-problem keeping only rows labeled first or second."""
    keep = {str(first), str(second)}
    if len(keep) != 2:
        raise DatasetValidationError("class pair must name two distinct labels")
    label_list = [str(label) for label in labels]
    present = set(label_list)
    missing = sorted(keep - present)
    if missing:
        raise DatasetValidationError(f"labels {missing} not present in the data")
    row_list = list(rows)
    selected = [i for i, label in enumerate(label_list) if label in keep]
    return validate_dataset(
        [row_list[i] for i in selected],
        [label_list[i] for i in selected],
        name=name
    )
