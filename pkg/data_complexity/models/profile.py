from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union
import json
import math

import numpy as np
import pandas as pd

MEASURES: Tuple[str, ...] = (
    "F1", "F2", "F3", "L1", "L2", "L3", "N1", "N2", "N3", "N4", "T1", "T2"
)
UNIT_INTERVAL = ("F2", "F3", "L2", "L3", "N1", "N3", "N4", "T1")
MAY_BE_INFINITE = ("F1", "N2")
CSV_COLUMNS = ("name", "n", "d") + MEASURES + ("flags",)
VARIANCE_CONVENTION = "population"
REAL_FORMAT = "%.17g"


def format_real(value: float) -> str:
    """Locale-independent text for a real: 17 significant digits, "inf" for infinity."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return format(float(value), ".17g")


def parse_real(value: Union[str, float, int]) -> float:
    """Inverse of format_real; also accepts plain numbers."""
    if isinstance(value, str):
        return float(value.strip())
    return float(value)


def frame_to_csv_text(frame: pd.DataFrame, index: bool = False, **kwargs) -> str:
    """Quoted-as-needed CSV text with reals at 17 significant digits and inf kept as text."""
    return frame.to_csv(index=index, float_format=REAL_FORMAT, lineterminator="\n", **kwargs)


@dataclass
class ComplexityProfile:
    """
    The twelve complexity measures of one two-class problem plus provenance.

    F1 and N2 may be +inf; every other measure is finite. Flags record which
    degenerate-case rules fired while measuring.

    Attributes:
        name: Problem identifier
        n: Number of points
        d: Number of features
        seed: Seed feeding the interpolated test sets of L3 and N4
        values: Measure name -> value, for all names in MEASURES
        flags: Degenerate-case markers, sorted
        solver_id: Pivoting scheme of the LP solver
        rng_algorithm: Bit generator behind the seed
        variance_convention: Variance convention of F1
        group: Optional group tag (e.g. separable, nonseparable, random)
    """
    name: str
    n: int
    d: int
    seed: int
    values: Dict[str, float]
    flags: Tuple[str, ...] = ()
    solver_id: str = ""
    rng_algorithm: str = ""
    variance_convention: str = VARIANCE_CONVENTION
    group: Optional[str] = None

    def __post_init__(self):
        """Validate measure ranges."""
        missing = [m for m in MEASURES if m not in self.values]
        if missing:
            raise ValueError(f"Missing measures: {missing}")
        self.values = {m: float(self.values[m]) for m in MEASURES}
        self.flags = tuple(sorted(set(self.flags)))
        for measure, value in self.values.items():
            if math.isnan(value):
                raise ValueError(f"{measure} is not a number")
            if math.isinf(value) and measure not in MAY_BE_INFINITE:
                raise ValueError(f"{measure} must be finite")
            if value < 0:
                raise ValueError(f"{measure} must be non-negative")
            if measure in UNIT_INTERVAL and value > 1:
                raise ValueError(f"{measure} must be between 0 and 1")

    def __getitem__(self, measure: str) -> float:
        return self.values[measure]

    def vector(self) -> np.ndarray:
        """Measures in MEASURES order."""
        return np.array([self.values[m] for m in MEASURES])

    def has_infinite(self) -> bool:
        return any(math.isinf(v) for v in self.values.values())

    def to_record(self) -> dict:
        """JSON-ready dict with a fixed key order; infinities become "inf"."""
        record = {"name": self.name, "n": self.n, "d": self.d, "seed": self.seed}
        for measure in MEASURES:
            value = self.values[measure]
            record[measure] = format_real(value) if math.isinf(value) else value
        record["flags"] = list(self.flags)
        record["solver_id"] = self.solver_id
        record["rng_algorithm"] = self.rng_algorithm
        record["variance_convention"] = self.variance_convention
        if self.group is not None:
            record["group"] = self.group
        return record

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, record: dict) -> 'ComplexityProfile':
        """Build from a dict produced by to_record (validated through ProfileRecordSchema)."""
        from data_complexity.data.schemas import ProfileRecordSchema

        schema = ProfileRecordSchema.model_validate(record)
        return cls(
            name=schema.name,
            n=schema.n,
            d=schema.d,
            seed=schema.seed,
            values={m: getattr(schema, m) for m in MEASURES},
            flags=tuple(schema.flags),
            solver_id=schema.solver_id,
            rng_algorithm=schema.rng_algorithm,
            variance_convention=schema.variance_convention,
            group=schema.group
        )

    @classmethod
    def from_json(cls, text: str) -> 'ComplexityProfile':
        return cls.from_record(json.loads(text))

@dataclass
class ProfileTable:
    """
    Profiles of many problems, one row each, in a consistent measure order.

    Attributes:
        rows: Complexity profiles
        groups: Optional group tag per row (defaults to each profile's group)
    """
    rows: List[ComplexityProfile] = field(default_factory=list)
    groups: List[Optional[str]] = field(default_factory=list)

    def __post_init__(self):
        if not self.groups:
            self.groups = [row.group for row in self.rows]
        if len(self.groups) != len(self.rows):
            raise ValueError("groups must have one entry per row")

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, profile: ComplexityProfile, group: Optional[str] = None) -> None:
        self.rows.append(profile)
        self.groups.append(group if group is not None else profile.group)

    def matrix(self) -> np.ndarray:
        """(rows x 12) array of measure values."""
        if not self.rows:
            return np.empty((0, len(MEASURES)))
        return np.vstack([row.vector() for row in self.rows])

    def column(self, measure: str) -> np.ndarray:
        return np.array([row.values[measure] for row in self.rows])

    def group_names(self) -> List[str]:
        """Distinct group tags in first-appearance order."""
        seen: List[str] = []
        for group in self.groups:
            if group is not None and group not in seen:
                seen.append(group)
        return seen

    def to_frame(self) -> pd.DataFrame:
        """Numeric table indexed like the CSV output (plus a group column)."""
        frame = pd.DataFrame(self.matrix(), columns=list(MEASURES))
        frame.insert(0, "name", [row.name for row in self.rows])
        frame.insert(1, "n", [row.n for row in self.rows])
        frame.insert(2, "d", [row.d for row in self.rows])
        frame["flags"] = [";".join(row.flags) for row in self.rows]
        frame["group"] = self.groups
        return frame

    def to_csv_text(self) -> str:
        """
        CSV with header name,n,d,F1..T2,flags (and a trailing group column when
        any row carries a group). Reals use 17 significant digits.
        """
        frame = self.to_frame()
        if all(g is None for g in self.groups):
            frame = frame.drop(columns="group")
        return frame_to_csv_text(frame)

    def write_csv(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_csv_text(), encoding="utf-8")

    @classmethod
    def read_csv(cls, path: Union[str, Path]) -> 'ProfileTable':
        """Load a table written by write_csv."""
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
        missing = [c for c in CSV_COLUMNS if c not in frame.columns]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}")
        table = cls()
        for _, row in frame.iterrows():
            group = row["group"] if "group" in frame.columns and row["group"] != "" else None
            profile = ComplexityProfile(
                name=row["name"],
                n=int(row["n"]),
                d=int(row["d"]),
                seed=0,
                values={m: parse_real(row[m]) for m in MEASURES},
                flags=tuple(f for f in row["flags"].split(";") if f),
                group=group
            )
            table.add(profile)
        return table
