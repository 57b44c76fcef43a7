"""
Data models for gwvirasoro.

Series arithmetic, cohomology models, invariant tables, potentials,
vector fields and check reports.
"""

from . import constants
from .cohomology import CohomologyModel
from .invariants import GWPotential, InvariantEntry
from .report import CheckReport, Verification
from .series import Monomial, Series, Window, divisor_exponential, equal_within_window
from .vector_field import VectorField, fields_equal_within_window

__all__ = [
    "CheckReport",
    "CohomologyModel",
    "GWPotential",
    "InvariantEntry",
    "Monomial",
    "Series",
    "VectorField",
    "Verification",
    "Window",
    "constants",
    "divisor_exponential",
    "equal_within_window",
    "fields_equal_within_window",
]
