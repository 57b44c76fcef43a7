"""
Error hierarchy for gwvirasoro.

Every error derives from ``ValueError`` so callers that only care about bad
input can keep catching the builtin type.
"""


class GWError(ValueError):
    """Base class for all gwvirasoro errors."""


class SchemaError(GWError):
    """A model or table document does not match its schema."""


class ModelValidationError(GWError):
    """Cohomological data violates a structural requirement."""


class ShapeMismatchError(GWError):
    """Series or vector fields of different shape were combined."""


class WindowError(GWError):
    """A truncation window is empty or too small for the requested computation."""


class InconsistentTableError(GWError):
    """Invariant table entries contradict each other or the classical data."""


class SolverError(GWError):
    """A coefficient system has no solution or more than one."""
