"""
Core modules of gwvirasoro.

Contains the model loader, potential builder, Frobenius calculus, Virasoro
checker, invariant solvers, check suite and report exporter.
"""

from .exporter import ReportExporter, describe_model
from .frobenius import (
    FrobeniusCalculus,
    apply_field,
    correlator,
    delta_field,
    euler_field,
    euler_power,
    lie_bracket,
    quantum_product,
)
from .loader import ModelLoader, dump_table, load_model, load_table, load_table_path, model_identity_failures
from .potentials import (
    PotentialBuilder,
    build_potential,
    check_quasi_homogeneity,
    check_string_property,
    classical_limit,
    normalize_table,
)
from .solvers import (
    GetzlerSolver,
    WDVVSolver,
    builtin_table,
    genus0_p2_table,
    kontsevich_numbers,
    solve_genus1_getzler,
)
from .suite import CHECKS, CheckSuite, resolve_check_names, run_suite
from .virasoro import VirasoroChecker, g0_tensor, g1_tensor, phi, psi

__all__ = [
    "CHECKS",
    "CheckSuite",
    "FrobeniusCalculus",
    "GetzlerSolver",
    "ModelLoader",
    "PotentialBuilder",
    "ReportExporter",
    "VirasoroChecker",
    "WDVVSolver",
    "apply_field",
    "build_potential",
    "builtin_table",
    "check_quasi_homogeneity",
    "check_string_property",
    "classical_limit",
    "correlator",
    "delta_field",
    "describe_model",
    "dump_table",
    "euler_field",
    "euler_power",
    "g0_tensor",
    "g1_tensor",
    "genus0_p2_table",
    "kontsevich_numbers",
    "lie_bracket",
    "load_model",
    "load_table",
    "load_table_path",
    "model_identity_failures",
    "normalize_table",
    "phi",
    "psi",
    "quantum_product",
    "resolve_check_names",
    "run_suite",
    "solve_genus1_getzler",
]
