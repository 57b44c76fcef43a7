"""CLI interface for gwvirasoro."""

import argparse
import sys
from collections.abc import Sequence

from .core import (
    ModelLoader,
    ReportExporter,
    build_potential,
    builtin_table,
    check_quasi_homogeneity,
    genus0_p2_table,
    load_table_path,
    resolve_check_names,
    run_suite,
    solve_genus1_getzler,
)
from .exceptions import (
    InconsistentTableError,
    ModelValidationError,
    SchemaError,
    ShapeMismatchError,
    SolverError,
    WindowError,
)
from .models import CohomologyModel, GWPotential, InvariantEntry
from .models.constants import (
    BUILTIN_PREFIX,
    DEFAULT_D_MAX,
    DEFAULT_T_MAX,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    REPORT_FORMATS,
)
from .utils import RunConfig, TruncationConfig, get_logger, setup_logger

logger = get_logger("cli")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--model",
        "-m",
        type=str,
        default=f"{BUILTIN_PREFIX}p2",
        help=f"Model file or built-in reference {BUILTIN_PREFIX}point|p1|p2 (default: {BUILTIN_PREFIX}p2)",
    )

    parser.add_argument(
        "--format",
        "-f",
        choices=REPORT_FORMATS,
        default="json",
        help="Output format: JSON lines or readable text (default: json)",
    )

    parser.add_argument("--out", "-o", type=str, help="Write output to this file instead of stdout")

    parser.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default="WARNING", help="Logging level"
    )

    parser.add_argument("--log-file", type=str, help="Also write logs to this file")


def _add_truncation_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--table",
        "-t",
        action="append",
        default=[],
        help="Invariant table file (repeatable); built-in models use their own table when omitted",
    )

    parser.add_argument(
        "--t-max", type=int, default=DEFAULT_T_MAX, help=f"Total t-degree bound (default: {DEFAULT_T_MAX})"
    )

    parser.add_argument(
        "--d-max", type=int, default=DEFAULT_D_MAX, help=f"Novikov degree bound (default: {DEFAULT_D_MAX})"
    )


def create_parser() -> argparse.ArgumentParser:
    """Creates command line argument parser."""
    parser = argparse.ArgumentParser(
        prog="gwvirasoro",
        description="Exact verification of genus-1 Virasoro constraints on truncated Gromov-Witten potentials",
        epilog="""
Usage examples:

  # Derived constants of a model
  gwvirasoro validate builtin:p2

  # Build the projective line potential and save it
  gwvirasoro build --model builtin:p1 --out p1-potential.json

  # Solve elliptic invariants of the plane through degree 5
  gwvirasoro solve-genus1 --model builtin:p2 --d-max 5 --t-max 18 --out p2-genus1.json

  # Run every check on the plane at t-degree 10, Novikov degree 3
  gwvirasoro check --model builtin:p2 --t-max 10 --d-max 3 --checks all --format text

  # Selected checks against your own model and tables
  gwvirasoro check --model mine.json --table g0.json --table g1.json --checks main_theorem,virasoro_small

Exit codes: 0 all checks pass, 1 failed check or inconsistent data, 2 usage or schema error.
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    validate = subparsers.add_parser("validate", help="Load a model and print its derived constants")
    validate.add_argument("model_path", nargs="?", help="Model file or built-in reference (overrides --model)")
    _add_common_arguments(validate)
    validate.set_defaults(format="text")

    build = subparsers.add_parser("build", help="Build F0 and F1, self-check them and write a potential artifact")
    _add_common_arguments(build)
    _add_truncation_arguments(build)

    solve = subparsers.add_parser("solve-genus1", help="Solve genus-1 point invariants from Getzler's relation")
    _add_common_arguments(solve)
    _add_truncation_arguments(solve)

    check = subparsers.add_parser("check", help="Run named checks and report them")
    _add_common_arguments(check)
    _add_truncation_arguments(check)
    check.add_argument(
        "--checks",
        "-c",
        type=str,
        default="all",
        help="Comma-separated check names, or 'all' (default: all)",
    )
    check.add_argument("--timings", action="store_true", help="Record per-check wall time in reports")

    return parser


def parse_checks(checks_str: str | None) -> list[str]:
    """Parses a comma-separated check selector."""
    if not checks_str:
        return []
    return [name.strip() for name in checks_str.split(",") if name.strip()]


def setup_config_from_args(args: argparse.Namespace) -> RunConfig:
    """Creates configuration from command line arguments."""
    model = getattr(args, "model_path", None) or args.model
    return RunConfig(
        model=model,
        tables=list(getattr(args, "table", [])),
        truncation=TruncationConfig(
            t_max=getattr(args, "t_max", DEFAULT_T_MAX), d_max=getattr(args, "d_max", DEFAULT_D_MAX)
        ),
        checks=parse_checks(getattr(args, "checks", None)),
        output_format=args.format,
        output_path=args.out,
        log_level=args.log_level,
        log_file=args.log_file,
        timings=getattr(args, "timings", False),
    )


def load_invariants(config: RunConfig, model: CohomologyModel) -> list[InvariantEntry]:
    """Entries from --table files, or the built-in table of a built-in model."""
    if config.tables:
        entries: list[InvariantEntry] = []
        for path in config.tables:
            entries.extend(load_table_path(path, model))
        return entries

    if config.builtin_name is not None:
        degree = config.truncation.table_degree
        logger.info(f"Using built-in table for {config.builtin_name} through degree {degree}")
        return builtin_table(config.builtin_name, degree)

    logger.warning(f"No table given for {config.model}; using classical data only")
    return []


def build_from_config(config: RunConfig) -> GWPotential:
    model = ModelLoader().resolve(config.model)
    entries = load_invariants(config, model)
    return build_potential(model, entries, config.truncation.window(model.curve_rank))


def cmd_validate(config: RunConfig) -> int:
    model = ModelLoader().resolve(config.model)
    ReportExporter(config.output_path).export_model_summary(model, config.output_format)
    return EXIT_OK


def cmd_build(config: RunConfig) -> int:
    potential = build_from_config(config)
    ReportExporter(config.output_path).export_potential(potential, config)

    failures = [g for g in (0, 1) if not check_quasi_homogeneity(potential, g).passed]
    if failures:
        logger.error(f"Quasi-homogeneity fails for genus {', '.join(str(g) for g in failures)}")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_solve_genus1(config: RunConfig) -> int:
    model = ModelLoader().resolve(config.model)
    d_max = config.truncation.d_max
    exporter = ReportExporter(config.output_path)
    if d_max == 0:
        exporter.export_table([])
        return EXIT_OK

    if config.tables:
        genus0 = [e for e in load_invariants(config, model) if e.genus == 0]
    elif config.builtin_name == "p2":
        genus0 = genus0_p2_table(d_max, model)
    else:
        raise SchemaError(f"solve-genus1 on {config.model} needs genus-0 tables given with --table")

    potential = build_potential(model, genus0, config.truncation.window(model.curve_rank))
    genus1 = solve_genus1_getzler(model, potential, d_max)
    exporter.export_table([*genus0, *genus1])
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    names = resolve_check_names(config.checks)
    potential = build_from_config(config)
    reports = run_suite(potential, names, timings=config.timings)
    ReportExporter(config.output_path).export_reports(reports, config.output_format)

    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.error(f"{len(failed)} check(s) failed: {', '.join(failed)}")
        return EXIT_FAILURE
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "build": cmd_build,
    "solve-genus1": cmd_solve_genus1,
    "check": cmd_check,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Main CLI function."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = setup_config_from_args(args)
    except ValueError as e:
        sys.stderr.write(f"gwvirasoro: error: {e}\n")
        return EXIT_USAGE

    setup_logger(level=config.log_level, log_file=config.log_file)
    logger.info(f"Running {args.command} on {config.model}")

    try:
        return COMMANDS[args.command](config)

    except (SchemaError, ModelValidationError, ShapeMismatchError, WindowError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_USAGE
    except (InconsistentTableError, SolverError) as e:
        logger.error(str(e))
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
