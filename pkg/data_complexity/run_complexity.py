import argparse
from pathlib import Path
from typing import List, Optional, Tuple
import json
import logging
import sys

from pydantic import ValidationError

from data_complexity.analysis.config import MeasureConfig
from data_complexity.analysis.profiler import MeasureError, compute_profile
from data_complexity.analysis.study import (
    AnalysisError,
    correlation_matrix,
    describe,
    linear_separability_census,
    pca,
    project
)
from data_complexity.batch.runner import run_batch
from data_complexity.batch.serialization import (
    ENCODING_JSON,
    correlation_to_csv_text,
    pc_plot_lines,
    pca_to_record,
    plot_data_lines,
    profiles_to_jsonl,
    read_profile_table,
    write_dataset_csv,
    write_encodings
)
from data_complexity.data.data_loader import CsvFormatError, DataLoader, RawTable, all_pairs
from data_complexity.measures.linear import is_linearly_separable
from data_complexity.measures.simplex import LPNumericError
from data_complexity.models.dataset import Dataset, DatasetValidationError, restrict_to_classes, validate_dataset
from data_complexity.models.profile import MEASURES, ProfileTable
from data_complexity.synth.generators import KINDS, GeneratorError, GeneratorSpec, generate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_MEASURE = 4


def parse_class_pair(text: Optional[str]) -> Optional[Tuple[str, str]]:
    """'a,b' -> ('a', 'b')."""
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts) or parts[0] == parts[1]:
        raise ValueError(f"--classes expects two distinct labels 'a,b', got {text!r}")
    return parts[0], parts[1]


def emit(text: str, output: Optional[str]) -> None:
    """Write text to the output file, or to stdout when none is given."""
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def save_encodings(table: RawTable, name: str, output: Optional[str]) -> None:
    """encoding.json next to the output file when categorical columns were coded."""
    if not table.encodings:
        return
    if not output:
        logger.info(f"coded columns {sorted(table.encodings)}; pass -o to save {ENCODING_JSON}")
        return
    write_encodings({name: table.encodings}, Path(output).parent / ENCODING_JSON)


def load_problem(args) -> Tuple[Dataset, RawTable]:
    """The two-class dataset named by csv/--label/--classes."""
    table = DataLoader().load_table(args.csv, args.label, encode=args.encode)
    name = Path(args.csv).stem
    pair = parse_class_pair(args.classes)
    if pair is not None:
        return restrict_to_classes(table.rows, table.labels, pair[0], pair[1], name=name), table
    return validate_dataset(table.rows, table.labels, name=name), table


def measure_config(args) -> MeasureConfig:
    overrides = {}
    if getattr(args, "tolerance", None) is not None:
        overrides["separable_tolerance"] = args.tolerance
    return MeasureConfig.from_env(
        jobs=getattr(args, "jobs", None),
        seed=getattr(args, "seed", 0),
        standardize=getattr(args, "standardize", False),
        **overrides
    )


def cmd_measure(args) -> int:
    ds, table = load_problem(args)
    profile = compute_profile(ds, config=measure_config(args))
    emit(profiles_to_jsonl([profile]), args.output)
    save_encodings(table, ds.name, args.output)
    return EXIT_OK


def cmd_pairs(args) -> int:
    table = DataLoader().load_table(args.csv, args.label, encode=args.encode)
    config = measure_config(args)
    profiles = ProfileTable()
    for ds in all_pairs(table.rows, table.labels, name=Path(args.csv).stem):
        profiles.add(compute_profile(ds, config=config))
    emit(profiles.to_csv_text(), args.output)
    save_encodings(table, Path(args.csv).stem, args.output)
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = GeneratorSpec(
        kind=args.kind,
        dim=args.dim,
        n_per_class=args.n,
        seed=args.seed,
        margin=args.margin,
        cells_per_side=args.cells,
        r_inner=args.r_inner,
        r_outer=args.r_outer,
        gap=args.gap
    )
    ds = generate(spec)
    write_dataset_csv(ds, args.output)
    logger.info(f"wrote {ds.n} points of {spec.name} to {args.output}")
    return EXIT_OK


def cmd_batch(args) -> int:
    manifest_path = Path(args.manifest)
    manifest = DataLoader.load_manifest(manifest_path)
    output = args.output or manifest.output
    if not output:
        raise ValueError("no output directory: pass -o or set 'output' in the manifest")
    output_dir = Path(output)
    if not output_dir.is_absolute() and not args.output:
        output_dir = manifest_path.parent / output_dir

    result = run_batch(
        manifest,
        config=measure_config(args),
        loader=DataLoader(manifest_path.parent),
        output_dir=output_dir
    )
    print(f"{len(result.table)} profiles written to {output_dir}")
    for failure in result.failures:
        print(f"failed: {failure.name}: {failure.error_type}: {failure.message}", file=sys.stderr)
    return EXIT_PARTIAL if result.exit_code else EXIT_OK


def cmd_correlate(args) -> int:
    result = correlation_matrix(read_profile_table(args.profiles))
    emit(correlation_to_csv_text(result), args.output)
    return EXIT_OK


def cmd_pca(args) -> int:
    result = pca(read_profile_table(args.profiles))
    for line in describe(result, args.threshold):
        print(line)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            json.dump(pca_to_record(result), f, indent=2)
            f.write("\n")
    return EXIT_OK


def cmd_plot_data(args) -> int:
    table = read_profile_table(args.profiles)
    if args.pc:
        lines = pc_plot_lines(project(pca(table), table, components=2))
    else:
        if not (args.x and args.y):
            raise ValueError("plot-data needs --x and --y, or --pc")
        lines = plot_data_lines(table, args.x, args.y)
    emit("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK


def cmd_separable(args) -> int:
    ds, _ = load_problem(args)
    print("yes" if is_linearly_separable(ds, tolerance=measure_config(args).separable_tolerance) else "no")
    return EXIT_OK


def cmd_census(args) -> int:
    census = linear_separability_census(
        read_profile_table(args.profiles),
        tolerance=measure_config(args).separable_tolerance
    )
    print(f"{census} linearly separable ({census.fraction:.1%})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="data-complexity",
        description="Geometric complexity measures for two-class classification problems"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress at DEBUG level")

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("csv", help="Problem CSV file with a header row")
    problem.add_argument("--label", required=True, help="Label column name or zero-based index")
    problem.add_argument("--encode", action="store_true", help="Code categorical feature columns")

    measuring = argparse.ArgumentParser(add_help=False)
    measuring.add_argument("--seed", type=int, default=0, help="Seed for the L3/N4 test sets")
    measuring.add_argument("--standardize", action="store_true", help="Z-score features before measuring")

    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("measure", parents=[common, problem, measuring], help="Profile one problem")
    p.add_argument("--classes", help="Two labels 'a,b' to extract from a multi-class file")
    p.add_argument("-o", "--output", help="Profile JSON output file (default stdout)")
    p.set_defaults(handler=cmd_measure)

    p = subparsers.add_parser("pairs", parents=[common, problem, measuring], help="Profile every class pair")
    p.add_argument("-o", "--output", help="Profile CSV output file (default stdout)")
    p.set_defaults(handler=cmd_pairs)

    p = subparsers.add_parser("generate", parents=[common], help="Write a synthetic problem")
    p.add_argument("kind", choices=KINDS, help="Generator family")
    p.add_argument("--dim", type=int, default=2, help="Number of features")
    p.add_argument("--n", type=int, default=100, help="Points per class")
    p.add_argument("--seed", type=int, default=0, help="Generator seed")
    p.add_argument("--margin", type=float, default=0.1, help="Margin width (linear-margin)")
    p.add_argument("--cells", type=int, default=4, help="Cells per side (checkerboard)")
    p.add_argument("--r-inner", type=float, default=1.0, help="Inner ring radius (rings)")
    p.add_argument("--r-outer", type=float, default=2.0, help="Outer ring radius (rings)")
    p.add_argument("--gap", type=float, default=0.5, help="Gap between rings (rings)")
    p.add_argument("-o", "--output", required=True, help="Output CSV file")
    p.set_defaults(handler=cmd_generate)

    p = subparsers.add_parser("batch", parents=[common], help="Profile every problem of a manifest")
    p.add_argument("manifest", help="JSON manifest")
    p.add_argument("-o", "--output", help="Output directory (overrides the manifest)")
    p.add_argument("--jobs", type=int, default=None, help="Concurrent problems (capped by COMPLEXITY_JOBS)")
    p.add_argument("--standardize", action="store_true", help="Z-score features before measuring")
    p.set_defaults(handler=cmd_batch)

    p = subparsers.add_parser("correlate", parents=[common], help="Correlation matrix of a profile table")
    p.add_argument("profiles", help="Profile CSV (or .jsonl) file")
    p.add_argument("-o", "--output", help="Output CSV file (default stdout)")
    p.set_defaults(handler=cmd_correlate)

    p = subparsers.add_parser("pca", parents=[common], help="Principal components of a profile table")
    p.add_argument("profiles", help="Profile CSV (or .jsonl) file")
    p.add_argument("--threshold", type=float, default=0.05, help="Variance fraction of a significant component")
    p.add_argument("-o", "--output", help="Output JSON file")
    p.set_defaults(handler=cmd_pca)

    p = subparsers.add_parser("plot-data", parents=[common], help="Scatter data for two measures")
    p.add_argument("profiles", help="Profile CSV (or .jsonl) file")
    p.add_argument("--x", choices=MEASURES, help="Measure on the horizontal axis")
    p.add_argument("--y", choices=MEASURES, help="Measure on the vertical axis")
    p.add_argument("--pc", action="store_true", help="Emit PC1/PC2 scores instead")
    p.add_argument("-o", "--output", help="Output file (default stdout)")
    p.set_defaults(handler=cmd_plot_data)

    p = subparsers.add_parser("separable", parents=[common, problem], help="Is a problem linearly separable?")
    p.add_argument("--classes", help="Two labels 'a,b' to extract from a multi-class file")
    p.add_argument("--tolerance", type=float, default=None, help="Largest L1 counted as separable (default 1e-9)")
    p.set_defaults(handler=cmd_separable)

    p = subparsers.add_parser("census", parents=[common], help="Count linearly separable problems")
    p.add_argument("profiles", help="Profile CSV (or .jsonl) file")
    p.add_argument("--tolerance", type=float, default=None, help="Largest L1 counted as separable (default 1e-9)")
    p.set_defaults(handler=cmd_census)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s"
    )

    try:
        return args.handler(args)
    except (OSError, CsvFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (MeasureError, LPNumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEASURE
    except (
        DatasetValidationError, GeneratorError, AnalysisError, ValidationError, ValueError, TypeError
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
