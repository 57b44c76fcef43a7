"""
gwvirasoro - exact genus-1 Virasoro verification for Gromov-Witten potentials.

Builds truncated genus-0 and genus-1 potentials of a target variety from its
cohomology data and an invariant table, then checks the genus-1 Virasoro
constraint on the small phase space together with every identity that leads
to it, in exact rational arithmetic.

Main features:
- Sparse truncated power series with explicit exactness windows
- Model files and built-in targets (point, projective line, projective plane)
- Quantum product, Euler field and quantum volume element
- Getzler's genus-1 relation, Phi and Psi, and Delta Psi = 0
- Plane invariants from WDVV (genus 0) and Getzler's relation (genus 1)
- CLI with JSON-lines reports

Usage example:

    from gwvirasoro import ModelLoader, build_potential, builtin_table, run_suite
    from gwvirasoro.models import Window

    model = ModelLoader().load_builtin("p1")
    potential = build_potential(model, builtin_table("p1", 4), Window(8, (4,)))
    for report in run_suite(potential, ["main_theorem", "virasoro_small"]):
        print(report.to_text())

Version: 1.0.0
License: MIT
"""

__version__ = "1.0.0"
__license__ = "MIT"

from .cli import main as cli_main
from .core import (
    CheckSuite,
    FrobeniusCalculus,
    GetzlerSolver,
    ModelLoader,
    PotentialBuilder,
    ReportExporter,
    VirasoroChecker,
    WDVVSolver,
    build_potential,
    builtin_table,
    genus0_p2_table,
    kontsevich_numbers,
    run_suite,
    solve_genus1_getzler,
)
from .exceptions import (
    GWError,
    InconsistentTableError,
    ModelValidationError,
    SchemaError,
    ShapeMismatchError,
    SolverError,
    WindowError,
)
from .models import CheckReport, CohomologyModel, GWPotential, InvariantEntry, Series, VectorField, Window
from .utils import RunConfig, TruncationConfig

__all__ = [
    "CheckReport",
    "CheckSuite",
    "CohomologyModel",
    "FrobeniusCalculus",
    "GWError",
    "GWPotential",
    "GetzlerSolver",
    "InconsistentTableError",
    "InvariantEntry",
    "ModelLoader",
    "ModelValidationError",
    "PotentialBuilder",
    "ReportExporter",
    "RunConfig",
    "SchemaError",
    "Series",
    "ShapeMismatchError",
    "SolverError",
    "TruncationConfig",
    "VectorField",
    "VirasoroChecker",
    "WDVVSolver",
    "Window",
    "WindowError",
    "__license__",
    "__version__",
    "build_potential",
    "builtin_table",
    "cli_main",
    "genus0_p2_table",
    "kontsevich_numbers",
    "quick_check",
    "run_suite",
    "solve_genus1_getzler",
]


def quick_check(builtin: str = "p1", t_max: int = 8, d_max: int = 4, checks: list[str] | None = None) -> dict:
    """
    Build a built-in potential and run checks on it in one call.

    Args:
        builtin: Built-in model name (point, p1, p2)
        t_max: Total t-degree bound
        d_max: Novikov degree bound
        checks: Check names (None runs everything)

    Returns:
        Dictionary with the potential summary and one report dictionary per check

    Example:
        result = quick_check("p1", checks=["virasoro_small"])
        print(result["passed"])
    """
    truncation = TruncationConfig(t_max=t_max, d_max=d_max)
    model = ModelLoader().load_builtin(builtin)
    table = builtin_table(builtin, truncation.table_degree)
    potential = build_potential(model, table, truncation.window(model.curve_rank))
    reports = run_suite(potential, checks)

    return {
        "potential": potential.to_dict(q_at_one=True),
        "reports": [report.to_dict() for report in reports],
        "passed": all(report.passed for report in reports),
    }
