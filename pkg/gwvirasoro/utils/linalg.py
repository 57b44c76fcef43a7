"""Exact linear algebra over the rationals, backed by sympy."""

from collections.abc import Sequence
from fractions import Fraction

import sympy

from ..exceptions import ModelValidationError, SolverError


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def invert_matrix(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of a square rational matrix; raises if it is singular."""
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ModelValidationError("matrix to invert must be square")

    matrix = sympy.Matrix(size, size, [_to_sympy(value) for row in rows for value in row])
    if matrix.det() == 0:
        raise ModelValidationError("matrix is singular")

    inverse = matrix.inv()
    return tuple(tuple(_from_sympy(inverse[i, j]) for j in range(size)) for i in range(size))


def solve_unique(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """
    Solve an overdetermined rational system that must have exactly one solution.

    Args:
        rows: Coefficient rows, one per equation
        rhs: Right hand sides

    Returns:
        The unique solution vector

    Raises:
        SolverError: If the system is inconsistent or underdetermined
    """
    if not rows:
        raise SolverError("no equations constrain the unknowns")

    width = len(rows[0])
    matrix = sympy.Matrix(len(rows), width, [_to_sympy(v) for row in rows for v in row])
    vector = sympy.Matrix(len(rhs), 1, [_to_sympy(v) for v in rhs])

    try:
        solution, params = matrix.gauss_jordan_solve(vector)
    except ValueError as e:
        raise SolverError("coefficient system is inconsistent") from e

    if params.shape[0] > 0:
        raise SolverError(f"coefficient system is underdetermined ({params.shape[0]} free)")

    return tuple(_from_sympy(solution[i, 0]) for i in range(width))
