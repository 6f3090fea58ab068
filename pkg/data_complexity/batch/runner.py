from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple
import json
import logging

from data_complexity.analysis.config import MeasureConfig
from data_complexity.analysis.profiler import MeasureError, compute_profile
from data_complexity.batch.parallel import map_ordered
from data_complexity.batch.serialization import (
    ENCODING_JSON,
    FAILURES_JSON,
    PROFILES_CSV,
    PROFILES_JSONL,
    profiles_to_jsonl,
    write_encodings
)
from data_complexity.data.data_loader import DataLoader
from data_complexity.data.schemas import ManifestSchema, ProblemEntrySchema
from data_complexity.models.dataset import Dataset
from data_complexity.models.profile import ComplexityProfile, ProfileTable
from data_complexity.synth.generators import GeneratorSpec, generate
from data_complexity.utils.random_utils import derive_seed

logger = logging.getLogger(__name__)

# Per-problem failures that are recorded instead of aborting the batch
PROBLEM_ERRORS = (OSError, ValueError, TypeError, MeasureError)


@dataclass
class ProblemFailure:
    """A manifest entry that produced no profile."""
    index: int
    name: str
    error_type: str
    message: str

    def asdict(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "error_type": self.error_type,
            "message": self.message,
        }


@dataclass
class EntryOutcome:
    """Profiles (one per class pair) or the failure of one manifest entry."""
    index: int
    profiles: List[ComplexityProfile] = field(default_factory=list)
    failure: Optional[ProblemFailure] = None
    encodings: Dict[str, Dict[str, int]] = field(default_factory=dict)


@dataclass
class BatchResult:
    """
    Outcome of a batch run.

    Attributes:
        table: Profiles in manifest order
        failures: Entries that failed, in manifest order
        encodings: Problem name -> coded feature mappings
    """
    table: ProfileTable
    failures: List[ProblemFailure] = field(default_factory=list)
    encodings: Dict[str, Dict[str, Dict[str, int]]] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        """0 when every entry succeeded, 1 on partial (or total) failure."""
        return 1 if self.failures else 0


@dataclass
class BatchRunner:
    """
    Measures every problem of a manifest.

    Entries run concurrently up to config.jobs; results are collected in manifest
    order and a failing entry is recorded without stopping the others.

    Attributes:
        config: Measuring configuration (seed, standardize, jobs)
        loader: Resolves CSV paths, usually against the manifest's directory
        output_dir: Directory for saving results
    """
    config: MeasureConfig
    loader: DataLoader = field(default_factory=DataLoader)
    output_dir: Optional[Path] = None

    @staticmethod
    def entry_name(entry: ProblemEntrySchema, index: int) -> str:
        if entry.name:
            return entry.name
        if entry.path is not None:
            return Path(entry.path).stem
        return f"problem-{index}"

    def entry_seed(self, entry: ProblemEntrySchema, index: int) -> int:
        """The entry's own seed, or one derived from the global seed and entry index."""
        if entry.seed is not None:
            return entry.seed
        return derive_seed(self.config.seed, index)

    def load_entry(self, entry: ProblemEntrySchema, index: int) -> Tuple[List[Dataset], Dict[str, Dict[str, int]]]:
        """Datasets for one entry plus any categorical encodings used."""
        name = self.entry_name(entry, index)
        if entry.generator is not None:
            spec_fields = dict(entry.generator)
            spec_fields.setdefault("seed", self.entry_seed(entry, index))
            ds = generate(GeneratorSpec.from_dict(spec_fields))
            if entry.name:
                ds = ds.with_points(ds.points, name=entry.name)
            return [ds], {}
        table = self.loader.load_table(entry.path, entry.label, encode=entry.encode)
        datasets = self.loader.load_problems(entry, name=name, table=table)
        return datasets, table.encodings

    def measure_entry(self, item: Tuple[int, ProblemEntrySchema]) -> EntryOutcome:
        index, entry = item
        name = self.entry_name(entry, index)
        seed = self.entry_seed(entry, index)
        outcome = EntryOutcome(index=index)
        try:
            datasets, outcome.encodings = self.load_entry(entry, index)
            for ds in datasets:
                outcome.profiles.append(compute_profile(ds, seed, self.config, group=entry.group))
        except PROBLEM_ERRORS as exc:
            logger.error(f"{name}: {type(exc).__name__}: {exc}")
            outcome.profiles = []
            outcome.failure = ProblemFailure(
                index=index,
                name=name,
                error_type=type(exc).__name__,
                message=str(exc)
            )
        return outcome

    def run(self, manifest: ManifestSchema) -> BatchResult:
        """Measure every entry; never raises for a single entry's failure."""
        items = list(enumerate(manifest.problems))
        logger.info(f"measuring {len(items)} manifest entries with {self.config.jobs} job(s)")
        outcomes = map_ordered(self.measure_entry, items, jobs=self.config.jobs)

        result = BatchResult(table=ProfileTable())
        for outcome in outcomes:
            for profile in outcome.profiles:
                result.table.add(profile)
            if outcome.failure is not None:
                result.failures.append(outcome.failure)
            if outcome.encodings:
                result.encodings[self.entry_name(manifest.problems[outcome.index], outcome.index)] = outcome.encodings
        logger.info(f"{len(result.table)} profiles, {len(result.failures)} failed entries")
        return result

    def save_results(self, result: BatchResult) -> None:
        """Write profiles.jsonl, profiles.csv and, when needed, failures.json and encoding.json."""
        if not self.output_dir:
            raise ValueError("Output directory not set")

        self.output_dir.mkdir(parents=True, exist_ok=True)
        (self.output_dir / PROFILES_JSONL).write_text(profiles_to_jsonl(result.table.rows), encoding="utf-8")
        result.table.write_csv(self.output_dir / PROFILES_CSV)

        failures_path = self.output_dir / FAILURES_JSON
        if result.failures:
            with open(failures_path, "w", encoding="utf-8") as f:
                json.dump([failure.asdict() for failure in result.failures], f, indent=2)
                f.write("\n")
        elif failures_path.exists():
            failures_path.unlink()

        if result.encodings:
            write_encodings(result.encodings, self.output_dir / ENCODING_JSON)


def run_batch(
    manifest: ManifestSchema,
    config: Optional[MeasureConfig] = None,
    loader: Optional[DataLoader] = None,
    output_dir: Optional[Path] = None
) -> BatchResult:
    """
    Measure a manifest and, when output_dir is given, save the results there.

    The manifest's seed and standardize settings override the config's.
    """
    config = config or MeasureConfig()
    config = replace(config, seed=manifest.seed, standardize=manifest.standardize or config.standardize)
    runner = BatchRunner(config=config, loader=loader or DataLoader(), output_dir=output_dir)
    result = runner.run(manifest)
    if output_dir is not None:
        runner.save_results(result)
    return result
