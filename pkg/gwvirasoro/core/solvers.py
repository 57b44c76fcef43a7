"""
Coefficient solvers for invariants of the projective plane.

Genus 0 numbers come from associativity of the quantum product, genus 1
numbers from Getzler's relation. Both solve one unknown per Novikov degree:
the residual is affine in it, so two evaluations and an exact linear solve
pin it down.
"""

from collections.abc import Callable, Sequence
from fractions import Fraction
from math import comb

from ..exceptions import SolverError, WindowError
from ..models import CohomologyModel, GWPotential, InvariantEntry, Series, Window
from ..utils import ProgressLogger, get_logger, solve_unique
from .frobenius import FrobeniusCalculus
from .loader import ModelLoader
from .potentials import build_potential
from .virasoro import VirasoroChecker

ResidualFunction = Callable[[Sequence[Fraction]], list[Series]]

logger = get_logger(__name__)


def solve_affine(residual: ResidualFunction, unknowns: int) -> tuple[Fraction, ...]:
    """
    Solve residual(x) = 0 coefficientwise for a residual affine in x.

    Args:
        residual: Maps trial values to a list of series that must vanish
        unknowns: Number of unknowns

    Returns:
        The unique exact solution

    Raises:
        SolverError: If the coefficient system is inconsistent or underdetermined
    """
    base = residual([Fraction(0)] * unknowns)
    columns = []
    for i in range(unknowns):
        unit_residual = residual([Fraction(1 if j == i else 0) for j in range(unknowns)])
        columns.append([p - b for p, b in zip(unit_residual, base, strict=True)])

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for s, constant in enumerate(base):
        monomials = set(constant.terms)
        for column in columns:
            monomials.update(column[s].terms)
        for monomial in sorted(monomials, key=lambda m: m.sort_key()):
            rows.append([column[s].coefficient(monomial) for column in columns])
            rhs.append(-constant.coefficient(monomial))

    return solve_unique(rows, rhs)


def kontsevich_numbers(d_max: int) -> list[int]:
    """
    N_1..N_dmax from the closed recursion for rational plane curves.

    N_d = sum_{d1 + d2 = d} N_d1 N_d2 [d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1)]
    """
    numbers = [0, 1]
    for d in range(2, d_max + 1):
        total = 0
        for d1 in range(1, d):
            d2 = d - d1
            total += numbers[d1] * numbers[d2] * (
                d1 * d1 * d2 * d2 * comb(3 * d - 4, 3 * d1 - 2) - d1**3 * d2 * comb(3 * d - 4, 3 * d1 - 1)
            )
        numbers.append(total)
    return numbers[1 : d_max + 1]


def _require_plane_like(model: CohomologyModel) -> None:
    if model.curve_rank != 1 or len(model.divisor_indices) != 1 or model.dim != 2:
        raise SolverError(
            f"model {model.name} is not shaped like the projective plane "
            "(surface with one divisor class and rank-1 curve lattice)"
        )


class WDVVSolver:
    """Genus-0 point invariants of a plane-like model from associativity."""

    def __init__(self, model: CohomologyModel) -> None:
        _require_plane_like(model)
        self.model = model
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    def entry(self, degree: int, value: Fraction | int) -> InvariantEntry:
        point = self.model.point_index
        return InvariantEntry(0, (degree,), (point,) * (3 * degree - 1), Fraction(value))

    def solve(self, d_max: int, seed: Fraction | int = 1) -> list[InvariantEntry]:
        if d_max < 1:
            raise ValueError("genus-0 tables start at degree 1")

        entries = [self.entry(1, seed)]
        progress = ProgressLogger(self.logger, d_max, "WDVV solve")
        progress.update(detail="degree 1 seeded")

        for degree in range(2, d_max + 1):
            window = Window(3 * degree - 1, (degree,))

            def residual(values: Sequence[Fraction], degree: int = degree, window: Window = window) -> list[Series]:
                potential = build_potential(self.model, [*entries, self.entry(degree, values[0])], window)
                return self.associativity_residuals(potential)

            (value,) = solve_affine(residual, 1)
            entries.append(self.entry(degree, value))
            progress.update(detail=f"N_{degree} = {value}")

        progress.finish()
        return entries

    def associativity_residuals(self, potential: GWPotential) -> list[Series]:
        """(u o v) o w - u o (v o w) for non-identity basis triples, flattened to components."""
        calc = FrobeniusCalculus(potential)
        residuals = []
        for a, b, c in calc.basis_multisets(3, skip_identity=True):
            u, v, w = calc.basis[a], calc.basis[b], calc.basis[c]
            difference = calc.quantum_product(calc.quantum_product(u, v), w) - calc.quantum_product(
                u, calc.quantum_product(v, w)
            )
            residuals.extend(difference.components)
        return residuals


class GetzlerSolver:
    """Genus-1 point invariants of a plane-like model from Getzler's relation."""

    def __init__(self, model: CohomologyModel) -> None:
        _require_plane_like(model)
        self.model = model
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    def entry(self, degree: int, value: Fraction | int) -> InvariantEntry:
        point = self.model.point_index
        return InvariantEntry(1, (degree,), (point,) * (3 * degree), Fraction(value))

    def solve(self, genus0: Sequence[InvariantEntry], d_max: int) -> list[InvariantEntry]:
        """
        Solve E_1..E_dmax degree by degree.

        Each degree d uses its own window (3d + 3, d): the residual involves
        genus-0 five-point functions, which cost three more t-degrees than the
        genus-1 unknown needs.
        """
        if d_max < 0:
            raise ValueError("d_max must be non-negative")

        genus0 = [e for e in genus0 if e.genus == 0]
        solved: list[InvariantEntry] = []
        if d_max == 0:
            return solved

        divisor = self.model.divisor_indices[0]
        progress = ProgressLogger(self.logger, d_max, "Getzler solve")

        for degree in range(1, d_max + 1):
            window = Window(3 * degree + 3, (degree,))

            def residual(values: Sequence[Fraction], degree: int = degree, window: Window = window) -> list[Series]:
                table = [*genus0, *solved, self.entry(degree, values[0])]
                potential = build_potential(self.model, table, window)
                checker = VirasoroChecker(potential)
                d = checker.calc.basis[divisor]
                return [checker.getzler_series(d, d, d, d)]

            (value,) = solve_affine(residual, 1)
            solved.append(self.entry(degree, value))
            progress.update(detail=f"E_{degree} = {value}")

        progress.finish()
        return solved


def genus0_p2_table(d_max: int, model: CohomologyModel | None = None) -> list[InvariantEntry]:
    """N_1..N_dmax for the projective plane from the WDVV oracle."""
    model = model or ModelLoader().load_builtin("p2")
    return WDVVSolver(model).solve(d_max)


def solve_genus1_getzler(model: CohomologyModel, potential: GWPotential, d_max: int) -> list[InvariantEntry]:
    """
    Genus-1 invariants E_1..E_dmax from the genus-0 part of ``potential``.

    Raises:
        WindowError: If the potential's genus-0 data does not reach Novikov degree d_max
    """
    if d_max > 0 and potential.window.novikov is not None and potential.window.novikov[0] < d_max:
        raise WindowError(
            f"genus-0 data is exact to Novikov degree {potential.window.novikov[0]}, below the requested {d_max}"
        )
    genus0_degrees = {e.beta[0] for e in potential.table if e.genus == 0}
    missing = [d for d in range(1, d_max + 1) if d not in genus0_degrees]
    if missing:
        raise WindowError(f"genus-0 table has no entries in degrees {missing}")
    return GetzlerSolver(model).solve(potential.table, d_max)


def builtin_table(name: str, d_max: int) -> list[InvariantEntry]:
    """Invariant table shipped for a built-in model, complete up to Novikov degree d_max."""
    loader = ModelLoader()
    model = loader.load_builtin(name)
    if name == "point" or d_max == 0:
        return []
    if name == "p1":
        return [InvariantEntry(0, (1,), (1, 1), Fraction(1))]
    if name == "p2":
        genus0 = WDVVSolver(model).solve(d_max)
        return genus0 + GetzlerSolver(model).solve(genus0, d_max)
    raise ValueError(f"no built-in table for {name!r}")
