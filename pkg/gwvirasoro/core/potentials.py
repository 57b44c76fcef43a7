"""
Genus 0 and genus 1 potentials from invariant tables.

Quantum terms are packaged with the divisor equation: a table only needs the
invariants without divisor insertions, the divisor dependence is restored by
``divisor_exponential``.
"""

from collections import Counter
from collections.abc import Iterable
from fractions import Fraction
from itertools import product
from math import factorial

from ..exceptions import InconsistentTableError, SchemaError, WindowError
from ..models import (
    CohomologyModel,
    GWPotential,
    InvariantEntry,
    Monomial,
    Series,
    Verification,
    Window,
    divisor_exponential,
    equal_within_window,
)
from ..utils import get_logger
from .frobenius import apply_field, euler_field, quadratic_form


def classical_f0(model: CohomologyModel, window: Window | None = None) -> Series:
    """(1/6) sum over ordered triples of k_abc t^a t^b t^c."""
    n = model.n
    terms: dict[Monomial, Fraction] = {}
    for a, b, c in product(range(n), repeat=3):
        value = model.triple[a][b][c]
        if not value:
            continue
        exponents = [0] * n
        for i in (a, b, c):
            exponents[i] += 1
        key = Monomial(tuple(exponents), (0,) * model.curve_rank)
        terms[key] = terms.get(key, Fraction(0)) + value / 6
    return Series(terms, n, model.curve_rank, window)


def classical_f1(model: CohomologyModel, window: Window | None = None) -> Series:
    """-(1/24) sum_alpha I_alpha t^alpha."""
    terms = {
        Monomial(tuple(1 if j == i else 0 for j in range(model.n)), (0,) * model.curve_rank): -value / 24
        for i, value in enumerate(model.cdm1_pairing)
        if value
    }
    return Series(terms, model.n, model.curve_rank, window)


def insertion_degree(model: CohomologyModel, index: int) -> Fraction:
    p, q = model.hodge[index]
    return Fraction(p + q, 2)


class PotentialBuilder:
    """Normalizes invariant tables and assembles F0, F1 for one model."""

    def __init__(self, model: CohomologyModel) -> None:
        self.model = model
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    def normalize(self, table: Iterable[InvariantEntry]) -> list[InvariantEntry]:
        """
        Strip divisor insertions and cross-check classical entries.

        Returns:
            Quantum entries without divisor insertions, sorted, one per invariant

        Raises:
            InconsistentTableError: If entries contradict each other, the
                classical data, the dimension axiom or the divisor equation
        """
        model = self.model
        divisors = {index: k for k, index in enumerate(model.divisor_indices)}
        normalized: dict[tuple, InvariantEntry] = {}
        origin: dict[tuple, InvariantEntry] = {}

        for entry in table:
            self._check_shape(entry)

            expected = model.virtual_dimension(entry.genus, entry.beta, len(entry.insertions))
            degree = sum((insertion_degree(model, i) for i in entry.insertions), Fraction(0))
            if degree != expected:
                if entry.value:
                    raise InconsistentTableError(
                        f"{self._describe(entry)} violates the dimension axiom: "
                        f"insertions have degree {degree}, virtual dimension is {expected}"
                    )
                continue

            if entry.is_classical:
                self._check_classical(entry)
                continue

            if model.identity_index in entry.insertions:
                if entry.value:
                    raise InconsistentTableError(
                        f"{self._describe(entry)} has an identity insertion at nonzero curve class "
                        f"but value {entry.value}"
                    )
                continue

            pairings = model.curve_pairing(entry.beta)
            value = entry.value
            kept = []
            stripped = True
            for index in entry.insertions:
                if index not in divisors:
                    kept.append(index)
                    continue
                pairing = pairings[divisors[index]]
                if pairing == 0:
                    if entry.value:
                        raise InconsistentTableError(
                            f"{self._describe(entry)} has a divisor insertion with zero degree on the "
                            f"curve class but value {entry.value}"
                        )
                    stripped = False
                    break
                value /= pairing
            if not stripped:
                continue

            reduced = InvariantEntry(entry.genus, entry.beta, tuple(kept), value)
            previous = normalized.get(reduced.key)
            if previous is not None and previous.value != reduced.value:
                raise InconsistentTableError(
                    f"{self._describe(origin[reduced.key])} and {self._describe(entry)} reduce to the "
                    f"same invariant with values {previous.value} and {reduced.value}"
                )
            normalized[reduced.key] = reduced
            origin.setdefault(reduced.key, entry)

        return [normalized[key] for key in sorted(normalized) if normalized[key].value]

    def build(self, table: Iterable[InvariantEntry], window: Window) -> GWPotential:
        """
        Assemble the potentials inside ``window``.

        Raises:
            WindowError: If the window is empty or holds no quantum term
        """
        model = self.model
        if window.is_empty:
            raise WindowError(f"cannot build a potential in an empty window ({window.describe()})")
        if window.novikov is not None and len(window.novikov) != model.curve_rank:
            raise WindowError(f"window has {len(window.novikov)} Novikov bounds, curve rank is {model.curve_rank}")

        entries = self.normalize(table)
        provenance = [
            "F0 classical part: (1/6) sum k_abc t^a t^b t^c",
            "F1 classical part: -(1/24) sum I_a t^a",
            "small phase space specialization: t on primary insertions only",
        ]

        quantum = [Series.zero(model.n, model.curve_rank, window), Series.zero(model.n, model.curve_rank, window)]
        exponentials: dict[tuple[int, ...], Series] = {}
        used = 0
        dropped = 0
        per_class: Counter = Counter()

        for entry in entries:
            tag = Monomial((0,) * model.n, entry.beta)
            exponents = [0] * model.n
            for index in entry.insertions:
                exponents[index] += 1
            if not window.contains(tag) or (
                window.t_degree is not None and sum(exponents) > window.t_degree
            ):
                dropped += 1
                continue

            if entry.beta not in exponentials:
                exponentials[entry.beta] = divisor_exponential(model, entry.beta, window)
            automorphisms = 1
            for count in Counter(entry.insertions).values():
                automorphisms *= factorial(count)

            monomial = Monomial(tuple(exponents), (0,) * model.curve_rank)
            insertions = Series({monomial: entry.value / automorphisms}, model.n, model.curve_rank, window)
            quantum[entry.genus] = quantum[entry.genus] + exponentials[entry.beta] * insertions
            per_class[(entry.genus, entry.beta)] += 1
            used += 1

        if entries and not used:
            raise WindowError(f"window {window.describe()} is too small to hold any quantum term of the table")
        if dropped:
            self.logger.warning(f"{dropped} table entries lie outside {window.describe()}")

        for (genus, beta), count in sorted(per_class.items()):
            provenance.append(f"F{genus} curve class {list(beta)}: {count} invariant(s) from table")

        f0 = classical_f0(model, window) + quantum[0]
        f1 = classical_f1(model, window) + quantum[1]
        return GWPotential(
            model=model,
            f0=f0,
            f1=f1,
            window=window,
            table=tuple(entries),
            provenance=tuple(provenance),
        )

    def _check_shape(self, entry: InvariantEntry) -> None:
        if len(entry.beta) != self.model.curve_rank:
            raise SchemaError(f"{self._describe(entry)}: curve class rank differs from {self.model.curve_rank}")
        if any(not 0 <= i < self.model.n for i in entry.insertions):
            raise SchemaError(f"{self._describe(entry)}: insertion index out of range")

    def _check_classical(self, entry: InvariantEntry) -> None:
        model = self.model
        if entry.genus == 0 and len(entry.insertions) == 3:
            a, b, c = entry.insertions
            expected = model.triple[a][b][c]
        elif entry.genus == 1 and len(entry.insertions) == 1:
            expected = -model.cdm1_pairing[entry.insertions[0]] / 24
        else:
            expected = Fraction(0)
        if entry.value != expected:
            raise InconsistentTableError(
                f"{self._describe(entry)} contradicts the classical value {expected}"
            )

    @staticmethod
    def _describe(entry: InvariantEntry) -> str:
        insertions = ",".join(str(i + 1) for i in entry.insertions)
        return f"<{insertions}>_(g={entry.genus}, beta={list(entry.beta)})"


def normalize_table(model: CohomologyModel, table: Iterable[InvariantEntry]) -> list[InvariantEntry]:
    return PotentialBuilder(model).normalize(table)


def build_potential(model: CohomologyModel, table: Iterable[InvariantEntry], window: Window) -> GWPotential:
    return PotentialBuilder(model).build(table, window)


def classical_limit(potential: GWPotential) -> GWPotential:
    """The same model with every quantum term removed; exact polynomials."""
    return PotentialBuilder(potential.model).build([], Window())


def check_quasi_homogeneity(potential: GWPotential, genus: int) -> Verification:
    """
    <<E>>_g = (3 - d)(1 - g) F_g + (1/2) delta_g0 C_ab t^a t^b - (1/24) delta_g1 int c1 c_(d-1).
    """
    model = potential.model
    free_energy = potential.free_energy(genus)
    lhs = apply_field(euler_field(model), free_energy)

    rhs = free_energy.scale((3 - model.dim) * (1 - genus))
    if genus == 0:
        rhs = rhs + quadratic_form(model, model.c1_form)
    else:
        rhs = rhs - model.int_c1_cdm1 / 24

    passed, window = equal_within_window(lhs, rhs)
    return Verification(passed, window, lhs - rhs)


def check_string_property(potential: GWPotential) -> Verification:
    """d/dt^1 F0 equals (1/2) eta_ab t^a t^b and d/dt^1 F1 vanishes."""
    model = potential.model
    n = model.n
    quadratic = quadratic_form(model, model.eta)

    identity = model.identity_index
    results = []
    for lhs, rhs in (
        (potential.f0.derivative(identity), quadratic),
        (potential.f1.derivative(identity), Series.zero(n, model.curve_rank)),
    ):
        passed, window = equal_within_window(lhs, rhs)
        results.append(Verification(passed, window, lhs - rhs))
    return Verification.combine(results)
