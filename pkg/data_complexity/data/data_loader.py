from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union
import json
import logging
import math

import numpy as np
import pandas as pd

from data_complexity.data.schemas import ManifestSchema, ProblemEntrySchema
from data_complexity.models.dataset import Dataset, restrict_to_classes, validate_dataset

logger = logging.getLogger(__name__)

# Data row k (zero-based) sits on file line k + 2 because of the header
HEADER_LINES = 1


class CsvFormatError(ValueError):
    """Malformed problem CSV; the message carries the file line number when known."""

    def __init__(self, message: str, path: Union[str, Path], line: Optional[int] = None):
        self.path = str(path)
        self.line = line
        location = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{location}: {message}")


@dataclass
class RawTable:
    """
    Parsed problem file: numeric feature matrix and label list.

    Attributes:
        rows: (n, d) feature matrix
        labels: Class tag per row
        feature_names: Column names of the features
        encodings: Feature name -> {category: code} for coded columns
        path: Source file
    """
    rows: np.ndarray
    labels: List[str]
    feature_names: List[str]
    encodings: Dict[str, Dict[str, int]] = field(default_factory=dict)
    path: str = ""

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def n_columns(self) -> int:
        return int(self.rows.shape[1])

    def distinct_labels(self) -> List[str]:
        return sorted(set(self.labels))


def encode_categoricals(values: Sequence[str]) -> Tuple[List[int], Dict[str, int]]:
    """
    Integer codes by order of first appearance, with the mapping used.

    Example: [red, blue, red] -> [0, 1, 0], {red: 0, blue: 1}
    """
    if len(values) == 0:
        raise ValueError("cannot encode an empty column")
    mapping: Dict[str, int] = {}
    codes = []
    for value in values:
        key = str(value)
        if key not in mapping:
            mapping[key] = len(mapping)
        codes.append(mapping[key])
    return codes, mapping


def decode_categoricals(codes: Sequence[int], mapping: Dict[str, int]) -> List[str]:
    """Inverse of encode_categoricals."""
    inverse = {code: value for value, code in mapping.items()}
    return [inverse[int(code)] for code in codes]


def parse_number(text: str) -> float:
    """Correctly rounded value of a numeric cell; NaN when the cell is not a number."""
    try:
        return float(text)
    except ValueError:
        return math.nan


def _resolve_label_column(frame: pd.DataFrame, label_column: Union[str, int], path) -> str:
    columns = [str(c) for c in frame.columns]
    key = str(label_column)
    if key in columns:
        return key
    if key.lstrip("-").isdigit() and -len(columns) <= int(key) < len(columns):
        return columns[int(key)]
    raise CsvFormatError(f"label column {key!r} not found; available columns: {columns}", path)


def parse_csv(path: Union[str, Path], label_column: Union[str, int], encode: bool = False) -> RawTable:
    """
    Read a headed CSV into a numeric feature matrix and a label list.

    Args:
        path: CSV file with a header row
        label_column: Label column name, or zero-based column index
        encode: Code non-numeric feature columns by first appearance

    Returns:
        RawTable: Parsed rows and labels

    Raises:
        CsvFormatError: Empty file, missing label column, missing value, or a
            non-numeric cell without encode (with the file line number)
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise CsvFormatError("file is empty", path)
    except pd.errors.ParserError as exc:
        raise CsvFormatError(f"unparseable CSV ({exc})", path)
    frame.columns = [str(c).strip() for c in frame.columns]
    if frame.shape[0] == 0:
        raise CsvFormatError("file has a header but no data rows", path, HEADER_LINES + 1)

    label_name = _resolve_label_column(frame, label_column, path)
    feature_names = [c for c in frame.columns if c != label_name]
    if not feature_names:
        raise CsvFormatError("no feature columns besides the label", path, HEADER_LINES)

    labels = [value.strip() for value in frame[label_name]]
    columns = []
    encodings: Dict[str, Dict[str, int]] = {}
    for name in feature_names:
        text = frame[name].str.strip()
        empty = np.flatnonzero((text == "").to_numpy())
        if empty.size:
            raise CsvFormatError(f"missing value in column {name!r}", path, int(empty[0]) + HEADER_LINES + 1)
        numeric = text.map(parse_number)
        bad = np.flatnonzero(numeric.isna().to_numpy())
        if bad.size:
            if not encode:
                row = int(bad[0])
                raise CsvFormatError(
                    f"non-numeric value {text.iloc[row]!r} in column {name!r} (use encoding)",
                    path, row + HEADER_LINES + 1
                )
            codes, mapping = encode_categoricals(list(text))
            encodings[name] = mapping
            columns.append(np.asarray(codes, dtype=np.float64))
        else:
            columns.append(numeric.to_numpy(dtype=np.float64))

    rows = np.column_stack(columns)
    logger.info(f"{path}: {rows.shape[0]} rows, {rows.shape[1]} feature columns, {len(set(labels))} classes")
    if encodings:
        logger.info(f"{path}: coded categorical columns {sorted(encodings)}")
    return RawTable(rows=rows, labels=labels, feature_names=feature_names, encodings=encodings, path=str(path))


def label_pairs(labels: Sequence[str]) -> List[Tuple[str, str]]:
    """Unordered pairs of distinct labels in lexicographic order."""
    distinct = sorted({str(label) for label in labels})
    if len(distinct) < 2:
        raise ValueError("need at least two distinct labels")
    return list(combinations(distinct, 2))


def all_pairs(rows, labels: Sequence[str], name: str = "dataset") -> List[Dataset]:
    """One two-class problem per unordered label pair, rows restricted to that pair."""
    rows = np.asarray(rows, dtype=np.float64)
    return [
        restrict_to_classes(rows, labels, first, second, name=f"{name}[{first}|{second}]")
        for first, second in label_pairs(labels)
    ]


class DataLoader:
    """Loads problem files and manifests, resolving paths against a base directory.

    Paths in a manifest are relative to the manifest file itself.
    """

    def __init__(self, data_directory: Optional[Union[str, Path]] = None):
        """Initialize the DataLoader.

        Args:
            data_directory: Base directory for relative paths; None means the
                current working directory.
        """
        self.data_directory = Path(data_directory) if data_directory else None

    def resolve(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        if path.is_absolute() or self.data_directory is None:
            return path
        return self.data_directory / path

    def load_table(self, path: Union[str, Path], label_column: Union[str, int], encode: bool = False) -> RawTable:
        return parse_csv(self.resolve(path), label_column, encode=encode)

    def load_problems(
        self,
        entry: ProblemEntrySchema,
        name: Optional[str] = None,
        table: Optional[RawTable] = None
    ) -> List[Dataset]:
        """
        Two-class datasets for one CSV manifest entry: the requested pair, every
        pair for "all-pairs", or the file itself when it has exactly two classes.
        An already parsed table may be passed to skip re-reading the file.
        """
        if entry.path is None:
            raise ValueError("entry has no path")
        if table is None:
            table = self.load_table(entry.path, entry.label, encode=entry.encode)
        name = name or entry.name or Path(entry.path).stem
        if entry.classes == "all-pairs":
            return all_pairs(table.rows, table.labels, name=name)
        if entry.classes is not None:
            first, second = entry.classes
            return [restrict_to_classes(table.rows, table.labels, first, second, name=name)]
        return [validate_dataset(table.rows, table.labels, name=name)]

    @staticmethod
    def load_manifest(path: Union[str, Path]) -> ManifestSchema:
        """Read and validate a JSON manifest.

        Raises:
            FileNotFoundError: If the manifest does not exist
            ValidationError: If the manifest does not match ManifestSchema
        """
        with open(path) as f:
            return ManifestSchema.model_validate(json.load(f))
