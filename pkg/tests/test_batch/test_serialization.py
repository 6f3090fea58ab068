import json
import math

import pytest
import numpy as np

from data_complexity.analysis.study import correlation_matrix, pca, project
from data_complexity.batch.serialization import (
    correlation_to_csv_text,
    dataset_to_csv_text,
    pc_plot_lines,
    pca_to_record,
    plot_data_lines,
    read_encodings,
    read_profile_table,
    read_profiles_jsonl,
    write_dataset_csv,
    write_encodings,
    write_profiles_jsonl
)
from data_complexity.data.data_loader import parse_csv
from data_complexity.models.dataset import validate_dataset
from data_complexity.models.profile import MEASURES, ComplexityProfile, ProfileTable

def profile_row(k, group=None, **overrides):
    rng = np.random.default_rng(k)
    values = {m: float(rng.random()) for m in MEASURES}
    values.update(overrides)
    return ComplexityProfile(name=f"p{k}", n=10, d=2, seed=k, values=values, group=group)

@pytest.fixture
def table():
    return ProfileTable(rows=[profile_row(k, group="random" if k % 2 else None) for k in range(6)])

# --- Profiles ---

def test_jsonl_files(tmp_path, table):
    path = tmp_path / "profiles.jsonl"
    write_profiles_jsonl(table.rows, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 6
    assert json.loads(lines[0])["name"] == "p0"
    assert read_profiles_jsonl(path) == table.rows

def test_read_profile_table_by_extension(tmp_path, table):
    csv_path = tmp_path / "profiles.csv"
    table.write_csv(csv_path)
    jsonl_path = tmp_path / "profiles.jsonl"
    write_profiles_jsonl(table.rows, jsonl_path)

    from_csv = read_profile_table(csv_path)
    from_jsonl = read_profile_table(jsonl_path)
    assert np.array_equal(from_csv.matrix(), from_jsonl.matrix())
    assert from_csv.groups == from_jsonl.groups == table.groups

def test_encodings_file(tmp_path):
    encodings = {"cars": {"colour": {"red": 0, "blue": 1}}}
    path = tmp_path / "encoding.json"
    write_encodings(encodings, path)
    assert read_encodings(path) == encodings
    assert list(read_encodings(path)["cars"]["colour"]) == ["red", "blue"]

# --- Datasets ---

def test_dataset_csv_text():
    ds = validate_dataset([[0.1, 2.0], [3.0, 4.0]], ["a", "b"])
    assert dataset_to_csv_text(ds) == "x1,x2,label\n0.10000000000000001,2,a\n3,4,b\n"

def test_written_dataset_parses_back(tmp_path):
    rng = np.random.default_rng(2)
    ds = validate_dataset(rng.random((8, 3)), ["c1", "c2"] * 4)
    path = tmp_path / "problem.csv"
    write_dataset_csv(ds, path)
    parsed = parse_csv(path, "label")
    assert np.array_equal(parsed.rows, ds.points)
    assert tuple(parsed.labels) == ds.labels

def test_dataset_labels_with_commas_survive(tmp_path):
    ds = validate_dataset([[1.0], [2.0], [3.0]], ["setosa, wild", "virginica", "setosa, wild"])
    path = tmp_path / "quoted.csv"
    write_dataset_csv(ds, path)
    assert path.read_text().splitlines()[1] == '1,"setosa, wild"'
    parsed = parse_csv(path, "label")
    assert parsed.rows.shape == (3, 1)
    assert tuple(parsed.labels) == ds.labels

# --- Analysis Output ---

def test_correlation_csv(table):
    for row in table.rows:
        row.values["T2"] = 1.0
    text = correlation_to_csv_text(correlation_matrix(table))
    lines = text.splitlines()
    assert lines[0] == "measure," + ",".join(MEASURES)
    assert len(lines) == 13
    assert lines[1].startswith("F1,1,")
    assert lines[-1] == "T2," + ",".join(["nan"] * 12)

def test_pca_record_is_json(table):
    record = json.loads(json.dumps(pca_to_record(pca(table))))
    assert record["form"] == "correlation"
    assert record["n_rows"] == 6
    assert list(record["loadings"]) == [f"PC{k + 1}" for k in range(12)]
    assert list(record["loadings"]["PC1"]) == list(MEASURES)
    assert sum(record["fractions"]) == pytest.approx(1.0)

def test_pca_record_loadings_follow_the_matrix(table):
    result = pca(table)
    record = pca_to_record(result)
    for k in range(result.n_components):
        for i, measure in enumerate(result.measures):
            assert record["loadings"][f"PC{k + 1}"][measure] == result.loadings[i, k]

# --- Plot Data ---

def test_plot_data_lines(table):
    lines = plot_data_lines(table, "N1", "N3")
    assert len(lines) == 6
    first = lines[0].split()
    assert float(first[0]) == table.rows[0]["N1"]
    assert float(first[1]) == table.rows[0]["N3"]
    assert first[2] == "-"
    assert lines[1].split()[2] == "random"

def test_plot_data_without_groups():
    table = ProfileTable(rows=[profile_row(k) for k in range(3)])
    assert all(len(line.split()) == 2 for line in plot_data_lines(table, "F1", "T2"))

def test_plot_data_infinite_values():
    table = ProfileTable(rows=[profile_row(0, F1=math.inf)])
    assert plot_data_lines(table, "F1", "N2")[0].startswith("inf ")

def test_plot_data_unknown_measure(table):
    with pytest.raises(ValueError):
        plot_data_lines(table, "N1", "Q7")

def test_pc_plot_lines(table):
    scores = project(pca(table), table, components=2)
    lines = pc_plot_lines(scores)
    assert len(lines) == 6
    assert lines[1].endswith(" random")
    with pytest.raises(ValueError):
        pc_plot_lines(scores[["name", "PC1", "group"]])
