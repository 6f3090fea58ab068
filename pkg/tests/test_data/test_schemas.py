import math

import pytest
from pydantic import ValidationError
from data_complexity.data.schemas import ManifestSchema, ProblemEntrySchema, ProfileRecordSchema

def profile_record(**overrides):
    record = {
        "name": "p", "n": 4, "d": 1, "seed": 0,
        "F1": 200.0, "F2": 0.0, "F3": 1.0,
        "L1": 0.0, "L2": 0.0, "L3": 0.0,
        "N1": 0.5, "N2": 0.1, "N3": 0.0, "N4": 0.0,
        "T1": 0.5, "T2": 4.0,
    }
    record.update(overrides)
    return record

# --- Problem Entries ---

def test_valid_csv_entry():
    """Test that a CSV entry with a class pair is accepted."""
    entry = ProblemEntrySchema(path="iris.csv", label=4, classes=["setosa", "virginica"], group="real")
    assert entry.label == "4"
    assert entry.classes == ["setosa", "virginica"]
    assert entry.seed is None
    assert entry.encode is False

def test_valid_generator_entry():
    entry = ProblemEntrySchema(generator={"kind": "rings", "n_per_class": 50})
    assert entry.path is None
    assert entry.generator["kind"] == "rings"

def test_entry_needs_one_source():
    """Test that an entry names exactly one of path or generator."""
    with pytest.raises(ValidationError):
        ProblemEntrySchema(label="y")
    with pytest.raises(ValidationError):
        ProblemEntrySchema(path="a.csv", generator={"kind": "rings"})

def test_invalid_classes():
    with pytest.raises(ValidationError) as exc_info:
        ProblemEntrySchema(path="a.csv", classes=["x", "x"])
    assert "classes" in str(exc_info.value)
    with pytest.raises(ValidationError):
        ProblemEntrySchema(path="a.csv", classes=["x", "y", "z"])
    with pytest.raises(ValidationError):
        ProblemEntrySchema(path="a.csv", classes="some-pairs")
    assert ProblemEntrySchema(path="a.csv", classes="all-pairs").classes == "all-pairs"

def test_entry_rejects_negative_seed_and_unknown_keys():
    with pytest.raises(ValidationError) as exc_info:
        ProblemEntrySchema(path="a.csv", seed=-1)
    assert "seed" in str(exc_info.value)
    with pytest.raises(ValidationError):
        ProblemEntrySchema(path="a.csv", colour="red")

# --- Manifests ---

def test_valid_manifest():
    manifest = ManifestSchema.model_validate({
        "seed": 7,
        "output": "results",
        "problems": [{"path": "a.csv"}, {"generator": {"kind": "checkerboard"}}]
    })
    assert manifest.seed == 7
    assert manifest.standardize is False
    assert len(manifest.problems) == 2

def test_manifest_validation():
    """Test that empty manifests and repeated paths are rejected."""
    with pytest.raises(ValidationError):
        ManifestSchema(problems=[])
    with pytest.raises(ValidationError) as exc_info:
        ManifestSchema.model_validate({"problems": [{"path": "a.csv"}, {"path": "a.csv"}]})
    assert "duplicate" in str(exc_info.value)
    with pytest.raises(ValidationError):
        ManifestSchema.model_validate({"problems": [{"path": "a.csv"}], "seed": -3})

# --- Profile Records ---

def test_valid_profile_record():
    record = ProfileRecordSchema.model_validate(profile_record(F1="inf", N2="inf", group="random"))
    assert record.F1 == math.inf
    assert record.N2 == math.inf
    assert record.group == "random"
    assert record.flags == []

def test_invalid_profile_record():
    """Test that out-of-range measures are rejected."""
    with pytest.raises(ValidationError) as exc_info:
        ProfileRecordSchema.model_validate(profile_record(N3=1.5))
    assert "N3" in str(exc_info.value)
    with pytest.raises(ValidationError):
        ProfileRecordSchema.model_validate(profile_record(T2=0.0))
    with pytest.raises(ValidationError):
        ProfileRecordSchema.model_validate(profile_record(n=1))
