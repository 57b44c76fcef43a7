"""Cohomology model of a target variety, with all derived constants."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..exceptions import ShapeMismatchError
from ..utils.rational import format_scalar

Matrix = tuple[tuple[Fraction, ...], ...]
Tensor3 = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class CohomologyModel:
    """
    Even cohomology of a smooth projective variety in a pure (p, q) basis.

    Indices are 0-based here; files use 1-based indices. Basis element 0 is
    the identity class. Build instances through ``core.loader.ModelLoader``,
    which derives and validates everything below the raw fields.
    """

    name: str
    dim: int
    labels: tuple[str, ...]
    hodge: tuple[tuple[int, int], ...]
    triple: Tensor3
    c1: tuple[Fraction, ...]
    cdm1_pairing: tuple[Fraction, ...]
    curve_rank: int
    divisor_pairing: tuple[tuple[int, ...], ...]

    # Derived
    eta: Matrix = field(repr=False)
    eta_inverse: Matrix = field(repr=False)
    b: tuple[Fraction, ...] = field(repr=False)
    cup: Tensor3 = field(repr=False)
    c1_matrix: Matrix = field(repr=False)
    c1_form: Matrix = field(repr=False)
    int_c1_cdm1: Fraction = field(repr=False)
    divisor_indices: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.hodge)

    @property
    def identity_index(self) -> int:
        return 0

    @property
    def point_index(self) -> int:
        """Index of the top-degree class."""
        return max(range(self.n), key=lambda i: (sum(self.hodge[i]), i))

    @property
    def b1(self) -> Fraction:
        return self.b[0]

    def p(self, index: int) -> int:
        return self.hodge[index][0]

    def raise_index(self, index: int) -> tuple[Fraction, ...]:
        """Coefficients of gamma^index in the basis: row ``index`` of eta inverse."""
        if not 0 <= index < self.n:
            raise ShapeMismatchError(f"basis index {index} out of range for rank {self.n}")
        return self.eta_inverse[index]

    def euler_constants(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """(c1 coefficients, linear coefficients b1 + 1 - b_alpha) of the Euler field."""
        return self.c1, tuple(self.b1 + 1 - b for b in self.b)

    def cup_product(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Classical cup product of two classes given by coefficient vectors."""
        out = [Fraction(0)] * self.n
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                for c in range(self.n):
                    out[c] += ua * vb * self.cup[a][b][c]
        return tuple(out)

    def pairing(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum(
            (u[a] * v[b] * self.eta[a][b] for a in range(self.n) for b in range(self.n)),
            Fraction(0),
        )

    def curve_pairing(self, beta: Sequence[int]) -> tuple[int, ...]:
        """(beta . D) for each divisor class D, in the order of ``divisor_indices``."""
        if len(beta) != self.curve_rank:
            raise ShapeMismatchError(f"curve class {tuple(beta)} does not have rank {self.curve_rank}")
        return tuple(
            sum(beta[i] * self.divisor_pairing[i][j] for i in range(self.curve_rank))
            for j in range(len(self.divisor_indices))
        )

    def c1_dot(self, beta: Sequence[int]) -> Fraction:
        """Degree of c1 on the curve class beta."""
        pairings = self.curve_pairing(beta)
        return sum(
            (self.c1[index] * pairing for index, pairing in zip(self.divisor_indices, pairings, strict=True)),
            Fraction(0),
        )

    def virtual_dimension(self, genus: int, beta: Sequence[int], n_points: int) -> Fraction:
        return (1 - genus) * (self.dim - 3) + self.c1_dot(beta) + n_points

    def to_dict(self) -> dict[str, Any]:
        """Derived constants, 1-based where indices appear, for reports."""

        def matrix(rows: Matrix) -> list[list[int | str]]:
            return [[format_scalar(v) for v in row] for row in rows]

        return {
            "name": self.name,
            "dim_c": self.dim,
            "rank": self.n,
            "basis": [{"label": label, "p": p, "q": q} for label, (p, q) in zip(self.labels, self.hodge, strict=True)],
            "eta": matrix(self.eta),
            "eta_inverse": matrix(self.eta_inverse),
            "b": [format_scalar(v) for v in self.b],
            "c1": [format_scalar(v) for v in self.c1],
            "euler_linear": [format_scalar(v) for v in self.euler_constants()[1]],
            "c1_matrix": matrix(self.c1_matrix),
            "c1_form": matrix(self.c1_form),
            "int_c1_cdm1": format_scalar(self.int_c1_cdm1),
            "divisor_indices": [i + 1 for i in self.divisor_indices],
            "curve_rank": self.curve_rank,
        }
