from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union
import json

import numpy as np
import pandas as pd

from data_complexity.analysis.study import CorrelationResult, PCAResult
from data_complexity.models.dataset import Dataset
from data_complexity.models.profile import MEASURES, ComplexityProfile, ProfileTable, format_real, frame_to_csv_text

PROFILES_JSONL = "profiles.jsonl"
PROFILES_CSV = "profiles.csv"
FAILURES_JSON = "failures.json"
ENCODING_JSON = "encoding.json"


def profiles_to_jsonl(profiles: Iterable[ComplexityProfile]) -> str:
    """One JSON object per profile, one per line."""
    return "".join(profile.to_json() + "\n" for profile in profiles)


def write_profiles_jsonl(profiles: Iterable[ComplexityProfile], path: Union[str, Path]) -> None:
    Path(path).write_text(profiles_to_jsonl(profiles), encoding="utf-8")


def read_profiles_jsonl(path: Union[str, Path]) -> List[ComplexityProfile]:
    with open(path, encoding="utf-8") as f:
        return [ComplexityProfile.from_json(line) for line in f if line.strip()]


def read_profile_table(path: Union[str, Path]) -> ProfileTable:
    """Profile table from a CSV table or a JSON-lines file (by extension)."""
    path = Path(path)
    if path.suffix == ".jsonl":
        return ProfileTable(rows=read_profiles_jsonl(path))
    return ProfileTable.read_csv(path)


def write_encodings(encodings: Dict[str, Dict[str, Dict[str, int]]], path: Union[str, Path]) -> None:
    """Problem name -> feature name -> {category: code}, keys in insertion order."""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(encodings, f, indent=2)
        f.write("\n")


def read_encodings(path: Union[str, Path]) -> Dict[str, Dict[str, Dict[str, int]]]:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def dataset_to_csv_text(ds: Dataset) -> str:
    """Headed CSV x1..xd,label with 17-significant-digit coordinates."""
    frame = pd.DataFrame(ds.points, columns=[f"x{k + 1}" for k in range(ds.dim)])
    frame["label"] = list(ds.labels)
    return frame_to_csv_text(frame)


def write_dataset_csv(ds: Dataset, path: Union[str, Path]) -> None:
    Path(path).write_text(dataset_to_csv_text(ds), encoding="utf-8")


def correlation_to_csv_text(result: CorrelationResult) -> str:
    """Square matrix with a measure header row and column; undefined entries are "nan"."""
    frame = pd.DataFrame(result.matrix, index=list(result.measures), columns=list(result.measures))
    return frame_to_csv_text(frame, index=True, index_label="measure", na_rep="nan")


def pca_to_record(result: PCAResult) -> dict:
    """JSON-ready PCA result; loadings keyed by component then measure."""
    return {
        "form": result.form,
        "n_rows": result.n_rows,
        "measures": list(result.measures),
        "fractions": [float(v) for v in result.fractions],
        "eigenvalues": [float(v) for v in result.eigenvalues],
        "means": [float(v) for v in result.means],
        "stds": [float(v) for v in result.stds],
        "loadings": result.loadings_frame().to_dict(),
        "excluded_rows": list(result.excluded_rows),
        "excluded_columns": list(result.excluded_columns),
    }


def _plot_lines(x: np.ndarray, y: np.ndarray, groups: List[Optional[str]]) -> List[str]:
    with_group = any(g is not None for g in groups)
    lines = []
    for xv, yv, group in zip(x, y, groups):
        cells = [format_real(float(xv)), format_real(float(yv))]
        if with_group:
            cells.append(group or "-")
        lines.append(" ".join(cells))
    return lines


def plot_data_lines(table: ProfileTable, x: str, y: str) -> List[str]:
    """
    Whitespace-separated "x y [group]" lines for a bivariate plot of two measures.

    Raises:
        ValueError: If either measure name is unknown
    """
    for measure in (x, y):
        if measure not in MEASURES:
            raise ValueError(f"unknown measure {measure!r}; expected one of {list(MEASURES)}")
    return _plot_lines(table.column(x), table.column(y), table.groups)


def pc_plot_lines(scores: pd.DataFrame) -> List[str]:
    """PC1/PC2 score lines from project()."""
    if "PC2" not in scores.columns:
        raise ValueError("need at least two principal components")
    groups = [g if isinstance(g, str) else None for g in scores["group"]]
    return _plot_lines(scores["PC1"].to_numpy(), scores["PC2"].to_numpy(), groups)
