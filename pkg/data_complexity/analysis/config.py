from dataclasses import dataclass, asdict, replace
from typing import Optional
import os

ENV_JOBS = "COMPLEXITY_JOBS"


@dataclass(frozen=True)
class MeasureConfig:
    """
    Configuration parameters for measuring complexity profiles.

    This class defines and validates everything needed to turn a dataset into
    a ComplexityProfile. It's immutable (frozen) so one instance can be shared
    by parallel workers.

    Core Parameters:
        seed: Seed for the interpolated test sets of L3 and N4
        standardize: Z-score every feature before measuring

    Solver Parameters:
        pivot_tolerance: Smallest admissible simplex pivot magnitude
        separable_tolerance: L1 at or below this counts as linearly separable;
            also the margin-residual tolerance of the LP solution

    Execution Parameters:
        jobs: Maximum number of problems measured concurrently
    """
    # Core parameters
    seed: int = 0
    standardize: bool = False

    # Solver parameters
    pivot_tolerance: float = 1e-12
    separable_tolerance: float = 1e-9

    # Execution parameters
    jobs: int = 1

    def __post_init__(self):
        """Validate all configuration parameters."""
        self._validate_core()
        self._validate_tolerances()
        self._validate_execution()

    def _validate_core(self):
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise TypeError("seed must be an integer")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not isinstance(self.standardize, bool):
            raise TypeError("standardize must be a boolean")

    def _validate_tolerances(self):
        for name in ("pivot_tolerance", "separable_tolerance"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise TypeError(f"{name} must be numeric")
            if not 0 < value < 1:
                raise ValueError(f"{name} must be between 0 and 1")

    def _validate_execution(self):
        if not isinstance(self.jobs, int) or isinstance(self.jobs, bool):
            raise TypeError("jobs must be an integer")
        if self.jobs <= 0:
            raise ValueError("jobs must be positive")

    def with_seed(self, seed: int) -> 'MeasureConfig':
        return replace(self, seed=seed)

    def asdict(self) -> dict:
        """Convert configuration to dictionary."""
        return asdict(self)

    @classmethod
    def from_dict(cls, config_dict: dict) -> 'MeasureConfig':
        """Create configuration from dictionary."""
        return cls(**config_dict)

    @classmethod
    def from_env(cls, jobs: Optional[int] = None, **kwargs) -> 'MeasureConfig':
        """
        Configuration whose job count is capped by the COMPLEXITY_JOBS variable.

        Raises:
            ValueError: If COMPLEXITY_JOBS is set but not a positive integer
        """
        requested = jobs if jobs is not None else 1
        raw = os.environ.get(ENV_JOBS)
        if raw:
            try:
                cap = int(raw)
            except ValueError:
                raise ValueError(f"{ENV_JOBS} must be an integer, got {raw!r}")
            if cap <= 0:
                raise ValueError(f"{ENV_JOBS} must be positive")
            requested = min(requested, cap) if jobs is not None else cap
        return cls(jobs=requested, **kwargs)
