"""Exact rational helpers for Gromov-Witten data files."""

from fractions import Fraction

from ..exceptions import SchemaError


def parse_scalar(value: object, where: str = "value") -> Fraction:
    """
    Parse an exact rational from a document value.

    Args:
        value: Integer or "num/den" string (floats are rejected)
        where: Location used in error messages

    Returns:
        Reduced Fraction
    """
    if isinstance(value, bool):
        raise SchemaError(f"{where}: booleans are not rationals")

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"{where}: cannot parse rational {value!r}") from e

    raise SchemaError(f"{where}: expected integer or 'num/den' string, got {type(value).__name__}")


def format_scalar(value: Fraction) -> int | str:
    """Integers stay integers, everything else becomes a 'num/den' string."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def parse_index(value: object, size: int, where: str) -> int:
    """Convert a 1-based document index into a 0-based Python index."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: index must be an integer, got {value!r}")
    if not 1 <= value <= size:
        raise SchemaError(f"{where}: index {value} outside 1..{size}")
    return value - 1
