"""
Frobenius manifold calculus on the small phase space.

Correlators, the quantum product, the Euler field, the grading operator,
the trivial connection and the identities that tie them together. Every
check evaluates both sides from primitives and compares them on the common
window.
"""

from collections.abc import Sequence
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement, pairwise, product

from ..exceptions import ShapeMismatchError, WindowError
from ..models import (
    CohomologyModel,
    GWPotential,
    Monomial,
    Series,
    VectorField,
    Verification,
    Window,
    equal_within_window,
    fields_equal_within_window,
)
from ..models.constants import MAX_DHOMOG_FIELDS
from ..utils import get_logger


def euler_field(model: CohomologyModel) -> VectorField:
    """E = c1 + sum_alpha (b1 + 1 - b_alpha) t^alpha gamma_alpha."""
    c1, linear = model.euler_constants()
    return VectorField(
        tuple(
            Series.constant(c1[a], model.n, model.curve_rank)
            + Series.variable(a, model.n, model.curve_rank, linear[a])
            for a in range(model.n)
        )
    )


def grading(model: CohomologyModel, v: VectorField) -> VectorField:
    """G(v): scale component alpha by b_alpha."""
    return VectorField(tuple(c.scale(model.b[a]) for a, c in enumerate(v.components)))


def quadratic_form(model: CohomologyModel, matrix: Sequence[Sequence[Fraction]]) -> Series:
    """(1/2) sum_ab matrix[a][b] t^a t^b as an exact polynomial."""
    n = model.n
    terms: dict[Monomial, Fraction] = {}
    for a, b in product(range(n), repeat=2):
        if not matrix[a][b]:
            continue
        exponents = [0] * n
        exponents[a] += 1
        exponents[b] += 1
        key = Monomial(tuple(exponents), (0,) * model.curve_rank)
        terms[key] = terms.get(key, Fraction(0)) + Fraction(matrix[a][b]) / 2
    return Series(terms, n, model.curve_rank)


def apply_field(v: VectorField, f: Series) -> Series:
    """Directional derivative sum_alpha v^alpha d_alpha f."""
    if v.n_vars != f.n_vars:
        raise ShapeMismatchError("vector field and series live on different spaces")
    total = Series.zero(f.n_vars, f.n_novikov, f.window.shift_t(-1).meet(v.window))
    for a, component in enumerate(v.components):
        if component.is_zero:
            continue
        total = total + component * f.derivative(a)
    return total


def nabla(direction: VectorField, w: VectorField) -> VectorField:
    """Trivial connection: (nabla_v w)^beta = sum_alpha v^alpha d_alpha w^beta."""
    return VectorField(tuple(apply_field(direction, c) for c in w.components))


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    return nabla(v, w) - nabla(w, v)


def check_dEuler(model: CohomologyModel, v: VectorField) -> Verification:
    """nabla_v E = -G(v) + (b1 + 1) v, an exact polynomial identity."""
    lhs = nabla(v, euler_field(model))
    rhs = grading(model, v).scale(-1) + v.scale(model.b1 + 1)
    passed, window = fields_equal_within_window(lhs, rhs)
    return Verification(passed, window, lhs - rhs)


def _compare(lhs: Series | VectorField, rhs: Series | VectorField) -> Verification:
    if isinstance(lhs, Series) and isinstance(rhs, Series):
        passed, window = equal_within_window(lhs, rhs)
    elif isinstance(lhs, VectorField) and isinstance(rhs, VectorField):
        passed, window = fields_equal_within_window(lhs, rhs)
    else:
        raise ShapeMismatchError("cannot compare a series with a vector field")
    return Verification(passed, window, lhs - rhs)


def compare_chain(*sides: Series | VectorField) -> Verification:
    """All consecutive sides must agree; the residual is the first disagreement."""
    return Verification.combine([_compare(a, b) for a, b in pairwise(sides)])


class FrobeniusCalculus:
    """
    Correlators and quantum products of one potential.

    Results are memoized per instance; all inputs are immutable so the
    caches never go stale.
    """

    def __init__(self, potential: GWPotential) -> None:
        self.potential = potential
        self.model = potential.model
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

        n = self.model.n
        r = self.model.curve_rank
        self.basis = tuple(VectorField.basis(a, n, r) for a in range(n))
        self.dual = tuple(VectorField.constant(self.model.raise_index(a), r) for a in range(n))
        self.euler = euler_field(self.model)

        self._derivatives: dict[tuple[int, tuple[int, ...]], Series] = {}
        self._correlators: dict[tuple, Series] = {}
        self._products: dict[tuple[VectorField, VectorField], VectorField] = {}
        self._powers: dict[int, VectorField] = {}
        self._delta: VectorField | None = None

    @property
    def window(self) -> Window:
        return self.potential.window

    def zero_series(self, window: Window | None = None) -> Series:
        return Series.zero(self.model.n, self.model.curve_rank, window)

    def zero_field(self) -> VectorField:
        return VectorField.zero(self.model.n, self.model.curve_rank)

    def grading(self, v: VectorField) -> VectorField:
        return grading(self.model, v)

    def derivative(self, genus: int, indices: tuple[int, ...]) -> Series:
        """Partial derivative of F_g along sorted coordinate indices."""
        key = (genus, indices)
        cached = self._derivatives.get(key)
        if cached is None:
            if not indices:
                cached = self.potential.free_energy(genus)
            else:
                cached = self.derivative(genus, indices[:-1]).derivative(indices[-1])
            self._derivatives[key] = cached
        return cached

    def correlator(self, genus: int, fields: Sequence[VectorField]) -> Series:
        """
        k-point function <<v1 ... vk>>_g.

        Args:
            genus: 0 or 1
            fields: At least one vector field
        """
        if not fields:
            raise ValueError("correlator needs at least one field")
        if genus not in (0, 1):
            raise ValueError(f"only genus 0 and 1 are supported, got {genus}")

        key = (genus, tuple(sorted(fields, key=hash)))
        cached = self._correlators.get(key)
        if cached is not None:
            return cached

        window = reduce(
            Window.meet,
            (f.window for f in fields),
            self.potential.free_energy(genus).window.shift_t(-len(fields)),
        )
        supports = [[(a, c) for a, c in enumerate(f.components) if not c.is_zero] for f in fields]

        total = self.zero_series(window)
        for combination in product(*supports):
            indices = tuple(sorted(a for a, _ in combination))
            term = self.derivative(genus, indices)
            if term.is_zero:
                continue
            for _, coefficient in combination:
                term = term * coefficient
            total = total + term

        self._correlators[key] = total
        return total

    def quantum_product(self, v: VectorField, w: VectorField) -> VectorField:
        """v o w = <<v w gamma^alpha>>_0 gamma_alpha."""
        key = (v, w) if hash(v) <= hash(w) else (w, v)
        cached = self._products.get(key)
        if cached is None:
            cached = VectorField(tuple(self.correlator(0, [v, w, self.dual[a]]) for a in range(self.model.n)))
            self._products[key] = cached
        return cached

    def product(self, *fields: VectorField) -> VectorField:
        """Left-associated quantum product of several fields."""
        return reduce(self.quantum_product, fields)

    def delta_field(self) -> VectorField:
        """Quantum volume element: sum_alpha gamma^alpha o gamma_alpha."""
        if self._delta is None:
            self._delta = reduce(
                VectorField.__add__,
                (self.quantum_product(self.dual[a], self.basis[a]) for a in range(self.model.n)),
            )
        return self._delta

    def euler_power(self, k: int) -> VectorField:
        """E^k, with E^0 the identity."""
        if k < 0:
            raise ValueError("quantum powers need k >= 0")
        if k == 0:
            return self.basis[self.model.identity_index]
        if k == 1:
            return self.euler
        cached = self._powers.get(k)
        if cached is None:
            cached = self.quantum_product(self.euler_power(k - 1), self.euler)
            self._powers[k] = cached
        return cached

    def contract_up(self, genus: int, fields: Sequence[VectorField]) -> VectorField:
        """<<fields gamma^alpha>>_g gamma_alpha."""
        return VectorField(tuple(self.correlator(genus, [*fields, self.dual[a]]) for a in range(self.model.n)))

    # Checks

    def check_associativity(self, u: VectorField, v: VectorField, w: VectorField) -> Verification:
        lhs = self.quantum_product(self.quantum_product(u, v), w)
        rhs = self.quantum_product(u, self.quantum_product(v, w))
        return compare_chain(lhs, rhs)

    def check_commutativity(self, u: VectorField, v: VectorField) -> Verification:
        lhs = self.contract_up(0, [u, v])
        rhs = self.contract_up(0, [v, u])
        return compare_chain(lhs, rhs)

    def check_frobenius(self, u: VectorField, v: VectorField, w: VectorField) -> Verification:
        """eta(u o v, w) = <<u v w>>_0."""
        uv = self.quantum_product(u, v)
        n = self.model.n
        lhs = self.zero_series(uv.window.meet(w.window))
        for a in range(n):
            for b in range(n):
                if self.model.eta[a][b]:
                    lhs = lhs + (uv.components[a] * w.components[b]).scale(self.model.eta[a][b])
        return compare_chain(lhs, self.correlator(0, [u, v, w]))

    def check_unit(self, v: VectorField) -> Verification:
        identity = self.basis[self.model.identity_index]
        return compare_chain(self.quantum_product(identity, v), v)

    def check_product_rule(self, w: VectorField, v1: VectorField, v2: VectorField) -> Verification:
        """nabla_w(v1 o v2) - (nabla_w v1) o v2 - v1 o (nabla_w v2) = <<w v1 v2 gamma^alpha>> gamma_alpha."""
        lhs = (
            nabla(w, self.quantum_product(v1, v2))
            - self.quantum_product(nabla(w, v1), v2)
            - self.quantum_product(v1, nabla(w, v2))
        )
        return compare_chain(lhs, self.contract_up(0, [w, v1, v2]))

    def check_dual_grading(self) -> Verification:
        """G(gamma^alpha) = (1 - b_alpha) gamma^alpha for every alpha."""
        return Verification.combine(
            [
                compare_chain(self.grading(self.dual[a]), self.dual[a].scale(1 - self.model.b[a]))
                for a in range(self.model.n)
            ]
        )

    def check_gaua_symmetry(self) -> Verification:
        """sum G(gamma^alpha) o gamma_alpha equals sum gamma^alpha o G(gamma_alpha)."""
        n = self.model.n
        lhs = reduce(
            VectorField.__add__, (self.quantum_product(self.grading(self.dual[a]), self.basis[a]) for a in range(n))
        )
        rhs = reduce(
            VectorField.__add__, (self.quantum_product(self.dual[a], self.grading(self.basis[a])) for a in range(n))
        )
        return compare_chain(lhs, rhs)

    def hessian_c_term(self, fields: Sequence[VectorField]) -> Series:
        """nabla^k of (1/2) C_ab t^a t^b along constant fields."""
        term = quadratic_form(self.model, self.model.c1_form)
        for field in fields:
            term = apply_field(field, term)
        return term

    def check_dhomog(self, genus: int, fields: Sequence[VectorField]) -> Verification:
        """
        Derivative of quasi-homogeneity along constant fields v1..vk:

        <<E v1..vk>>_g = sum_i <<v1..G(vi)..vk>>_g - (2g + k - 2)(b1 + 1) <<v1..vk>>_g
                         + delta_g0 nabla^k((1/2) C_ab t^a t^b)
        """
        k = len(fields)
        if not 1 <= k <= MAX_DHOMOG_FIELDS:
            raise ValueError(f"derivative order must be between 1 and {MAX_DHOMOG_FIELDS}, got {k}")
        if any(f.constant_coefficients() is None for f in fields):
            raise ValueError("derivatives of quasi-homogeneity need constant fields")

        lhs = self.correlator(genus, [self.euler, *fields])

        rhs = self.correlator(genus, list(fields)).scale(-(2 * genus + k - 2) * (self.model.b1 + 1))
        for i in range(k):
            graded = [*fields[:i], self.grading(fields[i]), *fields[i + 1 :]]
            rhs = rhs + self.correlator(genus, graded)
        if genus == 0:
            rhs = rhs + self.hessian_c_term(fields)

        return compare_chain(lhs, rhs)

    def check_Eg04pt(self, v1: VectorField, v2: VectorField) -> Verification:
        """<<E v1 v2 gamma^alpha>>_0 gamma_alpha = G(v1) o v2 + v1 o G(v2) - G(v1 o v2) - b1 v1 o v2."""
        lhs = self.contract_up(0, [self.euler, v1, v2])
        v1v2 = self.quantum_product(v1, v2)
        rhs = (
            self.quantum_product(self.grading(v1), v2)
            + self.quantum_product(v1, self.grading(v2))
            - self.grading(v1v2)
            - v1v2.scale(self.model.b1)
        )
        return compare_chain(lhs, rhs)

    def check_dEkD(self, k: int) -> Verification:
        """
        nabla_{E^k} Delta = <<E^k gamma^alpha gamma_alpha gamma^beta>> gamma_beta
            = (k - b1) E^{k-1} o Delta - G(E^{k-1} o Delta)
              - sum_i Delta o E^{i-1} o G(E^{k-i}) - sum_i G(Delta o E^{i-1}) o E^{k-i}
        """
        if k not in (1, 2, 3):
            raise ValueError(f"k must be 1, 2 or 3, got {k}")
        n = self.model.n
        delta = self.delta_field()
        ek = self.euler_power(k)

        via_connection = nabla(ek, delta)
        via_correlator = reduce(
            VectorField.__add__, (self.contract_up(0, [ek, self.dual[a], self.basis[a]]) for a in range(n))
        )

        lower = self.quantum_product(self.euler_power(k - 1), delta)
        rhs = lower.scale(k - self.model.b1) - self.grading(lower)
        for i in range(1, k):
            delta_ei = self.quantum_product(delta, self.euler_power(i - 1))
            rhs = rhs - self.quantum_product(delta_ei, self.grading(self.euler_power(k - i)))
            rhs = rhs - self.quantum_product(self.grading(delta_ei), self.euler_power(k - i))

        return compare_chain(via_connection, via_correlator, rhs)

    def check_dDE2(self) -> Verification:
        """nabla_Delta E^2 = Delta o G(E) - G(Delta) o E - G(Delta o E) + (b1 + 2) Delta o E."""
        delta = self.delta_field()
        lhs = nabla(delta, self.euler_power(2))
        delta_e = self.quantum_product(delta, self.euler)
        rhs = (
            self.quantum_product(delta, self.grading(self.euler))
            - self.quantum_product(self.grading(delta), self.euler)
            - self.grading(delta_e)
            + delta_e.scale(self.model.b1 + 2)
        )
        return compare_chain(lhs, rhs)

    def check_bracket_E2_Delta(self) -> Verification:
        """[E^2, Delta] = -2 b1 E o Delta - 2 G(E) o Delta."""
        delta = self.delta_field()
        lhs = lie_bracket(self.euler_power(2), delta)
        rhs = self.quantum_product(self.euler, delta).scale(-2 * self.model.b1) - self.quantum_product(
            self.grading(self.euler), delta
        ).scale(2)
        return compare_chain(lhs, rhs)

    def basis_multisets(self, size: int, skip_identity: bool = False) -> list[tuple[int, ...]]:
        start = 1 if skip_identity else 0
        return list(combinations_with_replacement(range(start, self.model.n), size))

    def ensure_window(self, minimum_t: int) -> None:
        if self.window.t_degree is not None and self.window.t_degree < minimum_t:
            raise WindowError(f"t-degree bound {self.window.t_degree} is below the required {minimum_t}")


def correlator(potential: GWPotential, genus: int, fields: Sequence[VectorField]) -> Series:
    return FrobeniusCalculus(potential).correlator(genus, fields)


def quantum_product(potential: GWPotential, v: VectorField, w: VectorField) -> VectorField:
    return FrobeniusCalculus(potential).quantum_product(v, w)


def delta_field(potential: GWPotential) -> VectorField:
    return FrobeniusCalculus(potential).delta_field()


def euler_power(potential: GWPotential, k: int) -> VectorField:
    return FrobeniusCalculus(potential).euler_power(k)


def constant_field(model: CohomologyModel, coefficients: Sequence[Fraction | int]) -> VectorField:
    if len(coefficients) != model.n:
        raise ShapeMismatchError(f"expected {model.n} coefficients, got {len(coefficients)}")
    return VectorField.constant(coefficients, model.curve_rank)
