import pytest

from data_complexity.analysis.config import ENV_JOBS, MeasureConfig

# --- Test Default Configuration ---

def test_default_config():
    """Test default configuration values."""
    config = MeasureConfig()

    # Core parameters
    assert config.seed == 0
    assert config.standardize is False

    # Solver parameters
    assert config.pivot_tolerance == 1e-12
    assert config.separable_tolerance == 1e-9

    # Execution parameters
    assert config.jobs == 1

# --- Test Parameter Validation ---

def test_core_validation():
    with pytest.raises(TypeError):
        MeasureConfig(seed=1.5)
    with pytest.raises(TypeError):
        MeasureConfig(seed=True)
    with pytest.raises(ValueError):
        MeasureConfig(seed=-1)
    with pytest.raises(TypeError):
        MeasureConfig(standardize="yes")

def test_tolerance_validation():
    """Tolerances must be numbers strictly between 0 and 1."""
    with pytest.raises(TypeError):
        MeasureConfig(pivot_tolerance="1e-12")
    with pytest.raises(ValueError):
        MeasureConfig(pivot_tolerance=0.0)
    with pytest.raises(ValueError):
        MeasureConfig(separable_tolerance=1.0)

def test_execution_validation():
    with pytest.raises(TypeError):
        MeasureConfig(jobs=2.0)
    with pytest.raises(ValueError):
        MeasureConfig(jobs=0)

# --- Test Conversions ---

def test_dict_round_trip():
    config = MeasureConfig(seed=7, standardize=True, jobs=3)
    assert MeasureConfig.from_dict(config.asdict()) == config

def test_with_seed():
    config = MeasureConfig(seed=1, jobs=2)
    reseeded = config.with_seed(9)
    assert reseeded.seed == 9
    assert reseeded.jobs == 2
    assert config.seed == 1

# --- Test Environment ---

def test_from_env_without_variable(monkeypatch):
    monkeypatch.delenv(ENV_JOBS, raising=False)
    assert MeasureConfig.from_env().jobs == 1
    assert MeasureConfig.from_env(jobs=4, seed=2).jobs == 4

def test_from_env_caps_jobs(monkeypatch):
    monkeypatch.setenv(ENV_JOBS, "3")
    assert MeasureConfig.from_env().jobs == 3
    assert MeasureConfig.from_env(jobs=8).jobs == 3
    assert MeasureConfig.from_env(jobs=2).jobs == 2

def test_from_env_rejects_bad_values(monkeypatch):
    monkeypatch.setenv(ENV_JOBS, "many")
    with pytest.raises(ValueError):
        MeasureConfig.from_env()
    monkeypatch.setenv(ENV_JOBS, "0")
    with pytest.raises(ValueError):
        MeasureConfig.from_env()
