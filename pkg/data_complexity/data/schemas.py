from pydantic import BaseModel, Field, ConfigDict, field_validator, model_validator
from typing import Optional, List, Union, Dict, Any


class ProblemEntrySchema(BaseModel):
    """Schema for one manifest entry.

    An entry names either a CSV file (with its label column and the class pair
    to extract) or a synthetic generator spec.

    Attributes:
        name (str): Optional problem name; defaults to the file stem or spec name
        path (str): CSV file, relative to the manifest's directory
        label (str): Label column name or zero-based index
        classes (list | str): Two labels to extract, or "all-pairs"
        seed (int): Per-problem seed; derived from the global seed when omitted
        encode (bool): Numerically code categorical feature columns
        group (str): Group tag carried into the profile table
        generator (dict): Generator spec fields (kind, dim, n_per_class, ...)
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: Optional[str] = Field(None, description="Problem name")
    path: Optional[str] = Field(None, description="CSV path")
    label: str = Field("label", description="Label column name or index")
    classes: Optional[Union[List[str], str]] = Field(None, description="Class pair or 'all-pairs'")
    seed: Optional[int] = Field(None, ge=0, description="Per-problem seed")
    encode: bool = Field(False, description="Code categorical features")
    group: Optional[str] = Field(None, description="Group tag")
    generator: Optional[Dict[str, Any]] = Field(None, description="Synthetic generator spec")

    @field_validator("label", mode="before")
    @classmethod
    def _label_as_text(cls, value):
        return str(value)

    @field_validator("classes")
    @classmethod
    def _check_classes(cls, value):
        if value is None:
            return value
        if isinstance(value, str):
            if value != "all-pairs":
                raise ValueError("classes must be a list of two labels or 'all-pairs'")
            return value
        if len(value) != 2 or value[0] == value[1]:
            raise ValueError("classes must name two distinct labels")
        return [str(v) for v in value]

    @model_validator(mode="after")
    def _one_source(self):
        if (self.path is None) == (self.generator is None):
            raise ValueError("entry needs exactly one of 'path' or 'generator'")
        return self


class ManifestSchema(BaseModel):
    """Schema for a batch manifest.

    Attributes:
        problems (list): Problem entries, measured in order
        seed (int): Global seed for entries without their own
        output (str): Output directory (overridden by the CLI's -o)
        standardize (bool): Z-score features before measuring
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    problems: List[ProblemEntrySchema] = Field(..., min_length=1)
    seed: int = Field(0, ge=0, description="Global seed")
    output: Optional[str] = Field(None, description="Output directory")
    standardize: bool = Field(False, description="Z-score features before measuring")

    @field_validator("problems")
    @classmethod
    def _distinct_paths(cls, problems):
        paths = [p.path for p in problems if p.path is not None]
        duplicates = sorted({p for p in paths if paths.count(p) > 1})
        if duplicates:
            raise ValueError(f"duplicate problem paths: {duplicates}")
        return problems


class ProfileRecordSchema(BaseModel):
    """Schema for a serialized complexity profile (one JSON line)."""
    model_config = ConfigDict(frozen=True)

    name: str
    n: int = Field(..., ge=2)
    d: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    F1: float = Field(..., ge=0)
    F2: float = Field(..., ge=0, le=1)
    F3: float = Field(..., ge=0, le=1)
    L1: float = Field(..., ge=0)
    L2: float = Field(..., ge=0, le=1)
    L3: float = Field(..., ge=0, le=1)
    N1: float = Field(..., ge=0, le=1)
    N2: float = Field(..., ge=0)
    N3: float = Field(..., ge=0, le=1)
    N4: float = Field(..., ge=0, le=1)
    T1: float = Field(..., ge=0, le=1)
    T2: float = Field(..., gt=0)
    flags: List[str] = Field(default_factory=list)
    solver_id: str = ""
    rng_algorithm: str = ""
    variance_convention: str = "population"
    group: Optional[str] = None

    @field_validator("F1", "F2", "F3", "L1", "L2", "L3", "N1", "N2", "N3", "N4", "T1", "T2", mode="before")
    @classmethod
    def _parse_infinity(cls, value):
        if isinstance(value, str) and value.strip().lower() == "inf":
            return float("inf")
        return value
