"""
Genus-1 Virasoro layer on the small phase space.

Builds Phi and Psi, the genus-0 and genus-1 Getzler tensors, and the checks
that connect them: Getzler's relation, the two contraction lemmas, the
vanishing of Delta Psi and the intermediate identities used on the way.
"""

from collections.abc import Callable, Hashable
from fractions import Fraction
from functools import reduce
from itertools import permutations

from ..models import CheckReport, GWPotential, Series, VectorField, Verification
from ..utils import get_logger
from .frobenius import FrobeniusCalculus, apply_field, compare_chain

G0_COEFFICIENTS = (Fraction(1, 6), Fraction(1, 24), Fraction(-1, 4))
G1_COEFFICIENTS = (Fraction(3), Fraction(-4), Fraction(-1), Fraction(2))


def _multiset(*fields: VectorField) -> tuple[VectorField, ...]:
    return tuple(sorted(fields, key=hash))


class VirasoroChecker:
    """Phi, Psi, Getzler tensors and the checks built on them, for one potential."""

    def __init__(self, potential: GWPotential, calculus: FrobeniusCalculus | None = None) -> None:
        self.potential = potential
        self.model = potential.model
        self.calc = calculus or FrobeniusCalculus(potential)
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

        self._memo: dict[Hashable, Series] = {}
        self._phi: Series | None = None
        self._psi: Series | None = None

    def _cached(self, key: Hashable, compute: Callable[[], Series]) -> Series:
        value = self._memo.get(key)
        if value is None:
            value = compute()
            self._memo[key] = value
        return value

    def _sum(self, series: list[Series]) -> Series:
        return reduce(Series.__add__, series)

    @property
    def n(self) -> int:
        return self.model.n

    # Building blocks

    def trace_weights(self) -> tuple[Fraction, ...]:
        """b_alpha (1 - b_alpha) - (b1 + 1) / 6 for each alpha."""
        b1 = self.model.b1
        return tuple(b * (1 - b) - (b1 + 1) / 6 for b in self.model.b)

    def genus1_e2(self) -> Series:
        """<<E^2>>_1."""
        return self._cached(("e2",), lambda: self.calc.correlator(1, [self.calc.euler_power(2)]))

    def eeaa_trace(self) -> Series:
        """sum_alpha <<E E gamma_alpha gamma^alpha>>_0."""
        euler = self.calc.euler
        return self._cached(
            ("eeaa",),
            lambda: self._sum(
                [self.calc.correlator(0, [euler, euler, self.calc.basis[a], self.calc.dual[a]]) for a in range(self.n)]
            ),
        )

    def weighted_two_point_trace(self) -> Series:
        """sum_alpha weight_alpha <<gamma_alpha gamma^alpha>>_0."""
        weights = self.trace_weights()
        return self._cached(
            ("weighted-2pt",),
            lambda: self._sum(
                [
                    self.calc.correlator(0, [self.calc.basis[a], self.calc.dual[a]]).scale(weights[a])
                    for a in range(self.n)
                ]
            ),
        )

    def phi(self) -> Series:
        """Phi = -(1/24) sum <<E E g_a g^a>>_0 + (1/2) sum (b_a (1 - b_a) - (b1 + 1)/6) <<g_a g^a>>_0."""
        if self._phi is None:
            self._phi = self.eeaa_trace().scale(Fraction(-1, 24)) + self.weighted_two_point_trace().scale(
                Fraction(1, 2)
            )
        return self._phi

    def psi(self) -> Series:
        """Psi = <<E^2>>_1 + (1/24) sum <<E E g_a g^a>>_0 - (1/2) sum (...) <<g_a g^a>>_0."""
        if self._psi is None:
            self._psi = (
                self.genus1_e2()
                + self.eeaa_trace().scale(Fraction(1, 24))
                - self.weighted_two_point_trace().scale(Fraction(1, 2))
            )
        return self._psi

    # Getzler tensors

    def _trace_pair(self, x: VectorField, y: VectorField) -> Series:
        """sum_beta <<x y gamma_beta gamma^beta>>_0."""
        return self._cached(
            ("trace4", _multiset(x, y)),
            lambda: self._sum(
                [self.calc.correlator(0, [x, y, self.calc.basis[b], self.calc.dual[b]]) for b in range(self.n)]
            ),
        )

    def _trace_single(self, x: VectorField) -> Series:
        """sum_beta <<x gamma_beta gamma^beta>>_0."""
        return self._cached(
            ("trace3", x),
            lambda: self._sum(
                [self.calc.correlator(0, [x, self.calc.basis[b], self.calc.dual[b]]) for b in range(self.n)]
            ),
        )

    def _g0_first(self, a: VectorField, b: VectorField, c: VectorField, d: VectorField) -> Series:
        """sum_alpha <<a b c gamma^alpha>>_0 sum_beta <<gamma_alpha d gamma_beta gamma^beta>>_0."""
        calc = self.calc
        return self._cached(
            ("g0-1", _multiset(a, b, c), d),
            lambda: self._sum(
                [calc.correlator(0, [a, b, c, calc.dual[i]]) * self._trace_pair(calc.basis[i], d) for i in range(self.n)]
            ),
        )

    def _g0_second(self, a: VectorField, b: VectorField, c: VectorField, d: VectorField) -> Series:
        """sum_alpha <<a b c d gamma^alpha>>_0 sum_beta <<gamma_alpha gamma_beta gamma^beta>>_0."""
        calc = self.calc
        return self._cached(
            ("g0-2", _multiset(a, b, c, d)),
            lambda: self._sum(
                [calc.correlator(0, [a, b, c, d, calc.dual[i]]) * self._trace_single(calc.basis[i]) for i in range(self.n)]
            ),
        )

    def _g0_third(self, a: VectorField, b: VectorField, c: VectorField, d: VectorField) -> Series:
        """sum_{alpha,beta} <<a b gamma^alpha gamma^beta>>_0 <<gamma_alpha gamma_beta c d>>_0."""
        calc = self.calc
        return self._cached(
            ("g0-3", _multiset(a, b), _multiset(c, d)),
            lambda: self._sum(
                [
                    calc.correlator(0, [a, b, calc.dual[i], calc.dual[j]])
                    * calc.correlator(0, [calc.basis[i], calc.basis[j], c, d])
                    for i in range(self.n)
                    for j in range(self.n)
                ]
            ),
        )

    def g0_tensor(self, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField) -> Series:
        """Genus-0 side of Getzler's relation, as a literal sum over S4."""
        fields = (v1, v2, v3, v4)
        first, second, third = G0_COEFFICIENTS
        terms = []
        for p in permutations(range(4)):
            a, b, c, d = (fields[i] for i in p)
            terms.append(
                self._g0_first(a, b, c, d).scale(first)
                + self._g0_second(a, b, c, d).scale(second)
                + self._g0_third(a, b, c, d).scale(third)
            )
        return self._sum(terms)

    def _g1_first(self, a: VectorField, b: VectorField, c: VectorField, d: VectorField) -> Series:
        """<<{a o b}{c o d}>>_1."""
        calc = self.calc
        return calc.correlator(1, [calc.quantum_product(a, b), calc.quantum_product(c, d)])

    def _g1_second(self, a: VectorField, b: VectorField, c: VectorField, d: VectorField) -> Series:
        """<<{a o b o c} d>>_1."""
        calc = self.calc
        return calc.correlator(1, [calc.quantum_product(calc.quantum_product(a, b), c), d])

    def _g1_third(self, a: VectorField, b: VectorField, c: VectorField, d: VectorField) -> Series:
        """sum_alpha <<{a o b} c d gamma^alpha>>_0 <<gamma_alpha>>_1."""
        calc = self.calc
        ab = calc.quantum_product(a, b)
        return self._cached(
            ("g1-3", ab, _multiset(c, d)),
            lambda: self._sum(
                [
                    calc.correlator(0, [ab, c, d, calc.dual[i]]) * calc.correlator(1, [calc.basis[i]])
                    for i in range(self.n)
                ]
            ),
        )

    def _g1_fourth(self, a: VectorField, b: VectorField, c: VectorField, d: VectorField) -> Series:
        """sum_alpha <<a b c gamma^alpha>>_0 <<{gamma_alpha o d}>>_1."""
        calc = self.calc
        return self._cached(
            ("g1-4", _multiset(a, b, c), d),
            lambda: self._sum(
                [
                    calc.correlator(0, [a, b, c, calc.dual[i]])
                    * calc.correlator(1, [calc.quantum_product(calc.basis[i], d)])
                    for i in range(self.n)
                ]
            ),
        )

    def g1_tensor(self, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField) -> Series:
        """Genus-1 side of Getzler's relation, as a literal sum over S4."""
        fields = (v1, v2, v3, v4)
        first, second, third, fourth = G1_COEFFICIENTS
        terms = []
        for p in permutations(range(4)):
            a, b, c, d = (fields[i] for i in p)
            terms.append(
                self._g1_first(a, b, c, d).scale(first)
                + self._g1_second(a, b, c, d).scale(second)
                + self._g1_third(a, b, c, d).scale(third)
                + self._g1_fourth(a, b, c, d).scale(fourth)
            )
        return self._sum(terms)

    def getzler_series(self, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField) -> Series:
        """G0 + G1 on four fields."""
        return self.g0_tensor(v1, v2, v3, v4) + self.g1_tensor(v1, v2, v3, v4)

    def getzler_residual(
        self, v1: VectorField, v2: VectorField, v3: VectorField, v4: VectorField, name: str = "getzler_residual"
    ) -> CheckReport:
        residual = self.getzler_series(v1, v2, v3, v4)
        return CheckReport.from_verification(name, compare_chain(residual, self.calc.zero_series()))

    def _contracted(self, tensor: Callable[..., Series]) -> Series:
        """sum_alpha tensor(E, E, gamma^alpha, gamma_alpha)."""
        euler = self.calc.euler
        return self._cached(
            ("contracted", tensor.__name__),
            lambda: self._sum([tensor(euler, euler, self.calc.dual[a], self.calc.basis[a]) for a in range(self.n)]),
        )

    # Lemmas and the theorem

    def lemma_g1(self) -> Verification:
        """sum_alpha G1(E, E, gamma^alpha, gamma_alpha) = 24 Delta <<E^2>>_1."""
        lhs = self._contracted(self.g1_tensor)
        rhs = apply_field(self.calc.delta_field(), self.genus1_e2()).scale(24)
        return compare_chain(lhs, rhs)

    def lemma_g0(self) -> Verification:
        """sum_alpha G0(E, E, gamma^alpha, gamma_alpha) = -24 Delta Phi."""
        lhs = self._contracted(self.g0_tensor)
        rhs = apply_field(self.calc.delta_field(), self.phi()).scale(-24)
        return compare_chain(lhs, rhs)

    def delta_psi(self) -> Series:
        return apply_field(self.calc.delta_field(), self.psi())

    def getzler_assembly(self) -> Verification:
        """24 Delta Psi = sum_alpha (G0 + G1)(E, E, gamma^alpha, gamma_alpha)."""
        lhs = self.delta_psi().scale(24)
        rhs = self._contracted(self.g0_tensor) + self._contracted(self.g1_tensor)
        return compare_chain(lhs, rhs)

    def check_lemma_g1(self) -> CheckReport:
        return CheckReport.from_verification("lemma_g1", self.lemma_g1())

    def check_lemma_g0(self) -> CheckReport:
        return CheckReport.from_verification("lemma_g0", self.lemma_g0())

    def check_getzler_assembly(self) -> CheckReport:
        return CheckReport.from_verification("getzler_assembly", self.getzler_assembly())

    def check_main_theorem(self) -> CheckReport:
        """
        Delta Psi = 0, checked directly and through the Getzler contraction.

        The second path evaluates sum_alpha (G0 + G1)(E, E, gamma^alpha, gamma_alpha) / 24,
        the sum of both lemma left sides, and requires it to equal Delta Psi.
        """
        zero = self.calc.zero_series()
        direct = compare_chain(self.delta_psi(), zero)
        assembly = self.getzler_assembly()
        combined = Verification.combine([direct, assembly])
        notes = [
            f"direct {'pass' if direct.passed else 'fail'}",
            f"via Getzler contraction {'pass' if assembly.passed else 'fail'}",
        ]
        return CheckReport.from_verification("main_theorem", combined, notes)

    def check_virasoro_small(self) -> CheckReport:
        """Psi = 0."""
        return CheckReport.from_verification("virasoro_small", compare_chain(self.psi(), self.calc.zero_series()))

    def check_EPsi(self) -> CheckReport:
        """E Psi = Psi."""
        return CheckReport.from_verification("e_psi", compare_chain(apply_field(self.calc.euler, self.psi()), self.psi()))

    def check_string_psi(self) -> CheckReport:
        """d Psi / d t^1 = 0."""
        lhs = self.psi().derivative(self.model.identity_index)
        return CheckReport.from_verification("string_psi", compare_chain(lhs, self.calc.zero_series()))

    def check_psi_phi_identity(self) -> CheckReport:
        """Psi = <<E^2>>_1 - Phi."""
        return CheckReport.from_verification(
            "psi_phi_identity", compare_chain(self.psi(), self.genus1_e2() - self.phi())
        )

    def check_psi_constant_term(self) -> CheckReport:
        """Constant term of Psi, directly and from the constant terms of its three pieces."""
        weights = self.trace_weights()
        calc = self.calc
        piecewise = self.genus1_e2().constant_term()
        piecewise += sum(
            (
                calc.correlator(0, [calc.euler, calc.euler, calc.basis[a], calc.dual[a]]).constant_term() / 24
                for a in range(self.n)
            ),
            Fraction(0),
        )
        piecewise -= sum(
            (
                weights[a] * calc.correlator(0, [calc.basis[a], calc.dual[a]]).constant_term() / 2
                for a in range(self.n)
            ),
            Fraction(0),
        )
        direct = self.psi().constant_term()
        lhs = Series.constant(direct, self.n, self.model.curve_rank, self.psi().window)
        rhs = Series.constant(piecewise, self.n, self.model.curve_rank, self.psi().window)
        report = CheckReport.from_verification("psi_constant_term", compare_chain(lhs, rhs))
        report.notes.append(f"constant term {direct}")
        return report

    # Intermediate identities

    def _delta_trace(self) -> Series:
        """sum_alpha <<Delta gamma^alpha gamma_alpha>>_0."""
        delta = self.calc.delta_field()
        return self._cached(("delta-trace",), lambda: self._trace_single(delta))

    def identity_gaua(self) -> Verification:
        """sum G(g^a) o g_a = sum g^a o G(g_a) = Delta / 2."""
        calc = self.calc
        left = reduce(
            VectorField.__add__,
            (calc.quantum_product(calc.grading(calc.dual[a]), calc.basis[a]) for a in range(self.n)),
        )
        right = reduce(
            VectorField.__add__,
            (calc.quantum_product(calc.dual[a], calc.grading(calc.basis[a])) for a in range(self.n)),
        )
        return compare_chain(left, right, calc.delta_field().scale(Fraction(1, 2)))

    def identity_egaua(self) -> Verification:
        """sum G(E o g^a) o g_a = (E o Delta) / 2."""
        calc = self.calc
        lhs = reduce(
            VectorField.__add__,
            (
                calc.quantum_product(calc.grading(calc.quantum_product(calc.euler, calc.dual[a])), calc.basis[a])
                for a in range(self.n)
            ),
        )
        rhs = calc.quantum_product(calc.euler, calc.delta_field()).scale(Fraction(1, 2))
        return compare_chain(lhs, rhs)

    def identity_eaua(self) -> Verification:
        """sum <<E g_a g^a g^b>>_0 g_b = (1 - b1) Delta - G(Delta)."""
        calc = self.calc
        lhs = reduce(
            VectorField.__add__,
            (calc.contract_up(0, [calc.euler, calc.basis[a], calc.dual[a]]) for a in range(self.n)),
        )
        delta = calc.delta_field()
        rhs = delta.scale(1 - self.model.b1) - calc.grading(delta)
        return compare_chain(lhs, rhs)

    def identity_gdd(self) -> Verification:
        """sum <<G(Delta) g^a g_a>>_0 = (1/2) sum <<Delta g^a g_a>>_0."""
        lhs = self._trace_single(self.calc.grading(self.calc.delta_field()))
        return compare_chain(lhs, self._delta_trace().scale(Fraction(1, 2)))

    def identity_edd(self) -> Verification:
        """sum <<Delta E g^m g_m>>_0 = (1/2 - b1) sum <<Delta g^a g_a>>_0."""
        lhs = self._trace_pair(self.calc.delta_field(), self.calc.euler)
        return compare_chain(lhs, self._delta_trace().scale(Fraction(1, 2) - self.model.b1))

    def _eddd_sum(self, weighted: bool) -> Series:
        """sum <<E X_a g_b g^m>>_0 <<g_m g^a g^b>>_0 with X_a = G(g_a) or g_a."""
        calc = self.calc
        terms = []
        for a in range(self.n):
            x = calc.grading(calc.basis[a]) if weighted else calc.basis[a]
            for b in range(self.n):
                for m in range(self.n):
                    right = calc.correlator(0, [calc.basis[m], calc.dual[a], calc.dual[b]])
                    if right.is_zero:
                        continue
                    terms.append(calc.correlator(0, [calc.euler, x, calc.basis[b], calc.dual[m]]) * right)
        return self._sum(terms) if terms else calc.zero_series()

    def identity_eddd(self) -> Verification:
        """sum <<E g_a g_b g^m>>_0 <<g_m g^a g^b>>_0 = (1/2 - b1) sum <<Delta g^a g_a>>_0."""
        return compare_chain(self._eddd_sum(False), self._delta_trace().scale(Fraction(1, 2) - self.model.b1))

    def identity_egd(self) -> Verification:
        """sum <<E G(g_a) g_b g^m>>_0 <<g_m g^a g^b>>_0 = sum (b_a^2 - b1/2) <<Delta g^a g_a>>_0."""
        calc = self.calc
        delta = calc.delta_field()
        rhs = self._sum(
            [
                calc.correlator(0, [delta, calc.dual[a], calc.basis[a]]).scale(self.model.b[a] ** 2 - self.model.b1 / 2)
                for a in range(self.n)
            ]
        )
        return compare_chain(self._eddd_sum(True), rhs)

    def proof_identities(self) -> dict[str, Callable[[], Verification]]:
        return {
            "proof_gaua": self.identity_gaua,
            "proof_egaua": self.identity_egaua,
            "proof_eaua": self.identity_eaua,
            "proof_gdd": self.identity_gdd,
            "proof_edd": self.identity_edd,
            "proof_eddd": self.identity_eddd,
            "proof_egd": self.identity_egd,
        }

    def check_proof_identities(self) -> list[CheckReport]:
        return [CheckReport.from_verification(name, compute()) for name, compute in self.proof_identities().items()]


def phi(potential: GWPotential) -> Series:
    return VirasoroChecker(potential).phi()


def psi(potential: GWPotential) -> Series:
    return VirasoroChecker(potential).psi()


def g0_tensor(potential: GWPotential, *fields: VectorField) -> Series:
    return VirasoroChecker(potential).g0_tensor(*fields)


def g1_tensor(potential: GWPotential, *fields: VectorField) -> Series:
    return VirasoroChecker(potential).g1_tensor(*fields)
