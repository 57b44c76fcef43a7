"""
Truncated multivariate formal power series over exact rationals.

A series lives in the ring Q[[t^1..t^N]][[q^1..q^r]]. Coefficients are held
in a sympy ``PolyElement`` over ``QQ`` with generators t1..tN, q1..qr. Every
series carries the window it is exact in; operations combine windows by
taking the smaller one and drop everything outside it.
"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from types import MappingProxyType
from typing import TYPE_CHECKING, Any, NamedTuple

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_diff, rs_exp, rs_trunc
from sympy.polys.rings import PolyElement, PolyRing, ring

from ..exceptions import SchemaError, ShapeMismatchError, WindowError
from ..utils.rational import format_scalar, parse_scalar

if TYPE_CHECKING:
    from .cohomology import CohomologyModel


Scalar = Fraction | int
Exponents = tuple[int, ...]


class Monomial(NamedTuple):
    """Exponents of t^1..t^N and q^1..q^r."""

    t: tuple[int, ...]
    novikov: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.t)

    def sort_key(self) -> tuple:
        return (sum(self.t), self.t, sum(self.novikov), self.novikov)

    def to_text(self) -> str:
        factors = [_power("t", i, e) for i, e in enumerate(self.t) if e]
        factors += [_power("q", i, e) for i, e in enumerate(self.novikov) if e]
        return "*".join(factors)


def _power(symbol: str, index: int, exponent: int) -> str:
    return f"{symbol}{index + 1}" if exponent == 1 else f"{symbol}{index + 1}^{exponent}"


@dataclass(frozen=True)
class Window:
    """
    Truncation window: total t-degree bound and per-curve-class Novikov bounds.

    ``None`` means unbounded in that direction.
    """

    t_degree: int | None = None
    novikov: tuple[int, ...] | None = None

    @classmethod
    def unbounded(cls) -> "Window":
        return cls()

    @property
    def is_unbounded(self) -> bool:
        return self.t_degree is None and self.novikov is None

    @property
    def is_empty(self) -> bool:
        if self.t_degree is not None and self.t_degree < 0:
            return True
        return self.novikov is not None and any(bound < 0 for bound in self.novikov)

    def meet(self, other: "Window") -> "Window":
        """Smaller of two windows, componentwise."""
        if self.t_degree is None:
            t_degree = other.t_degree
        elif other.t_degree is None:
            t_degree = self.t_degree
        else:
            t_degree = min(self.t_degree, other.t_degree)

        if self.novikov is None:
            novikov = other.novikov
        elif other.novikov is None:
            novikov = self.novikov
        else:
            if len(self.novikov) != len(other.novikov):
                raise ShapeMismatchError("windows have different Novikov ranks")
            novikov = tuple(min(a, b) for a, b in zip(self.novikov, other.novikov, strict=True))

        return Window(t_degree, novikov)

    def shift_t(self, amount: int) -> "Window":
        if self.t_degree is None:
            return self
        return Window(self.t_degree + amount, self.novikov)

    def contains(self, monomial: Monomial) -> bool:
        if self.t_degree is not None and monomial.degree > self.t_degree:
            return False
        if self.novikov is not None:
            return all(e <= bound for e, bound in zip(monomial.novikov, self.novikov, strict=True))
        return True

    def covers(self, other: "Window") -> bool:
        """True when every monomial inside ``other`` is also inside this window."""
        return self.meet(other) == other

    def describe(self) -> str:
        if self.is_unbounded:
            return "Unbounded"
        t_part = "t-degree unbounded" if self.t_degree is None else f"t-degree <= {self.t_degree}"
        if self.novikov is None:
            return f"{t_part}, Novikov unbounded"
        return f"{t_part}, Novikov <= ({', '.join(str(n) for n in self.novikov)})"

    def to_dict(self) -> dict[str, Any]:
        return {
            "t_degree": self.t_degree,
            "novikov": list(self.novikov) if self.novikov is not None else None,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Window":
        novikov = data.get("novikov")
        return cls(data.get("t_degree"), tuple(novikov) if novikov is not None else None)


@cache
def coefficient_ring(n_vars: int, n_novikov: int) -> PolyRing:
    """Polynomial ring over QQ with generators t1..tN, q1..qr."""
    names = [f"t{i + 1}" for i in range(n_vars)] + [f"q{i + 1}" for i in range(n_novikov)]
    return ring(",".join(names), QQ)[0]


def _to_qq(value: Scalar) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _clip(poly: PolyElement, window: Window, n_vars: int) -> PolyElement:
    """Drop the terms of ``poly`` that lie outside ``window``."""
    if window.novikov is not None:
        for offset, bound in enumerate(window.novikov):
            poly = rs_trunc(poly, poly.ring.gens[n_vars + offset], bound + 1)
    if window.t_degree is not None:
        bound = window.t_degree
        poly = poly.ring.from_dict({e: c for e, c in poly.items() if sum(e[:n_vars]) <= bound})
    return poly


class Series:
    """
    Sparse truncated power series with exact rational coefficients.

    Instances are immutable and hashable, so they can key memo tables.
    """

    __slots__ = ("_grades", "_hash", "_poly", "_terms", "n_novikov", "n_vars", "window")

    def __init__(
        self,
        terms: Mapping[Monomial, Scalar],
        n_vars: int,
        n_novikov: int,
        window: Window | None = None,
    ):
        window = window or Window()
        if window.novikov is not None and len(window.novikov) != n_novikov:
            raise ShapeMismatchError(
                f"window has {len(window.novikov)} Novikov bounds for {n_novikov} variables"
            )

        clean: dict[Exponents, Fraction] = {}
        for monomial, coefficient in terms.items():
            monomial = Monomial(tuple(monomial[0]), tuple(monomial[1]))
            if len(monomial.t) != n_vars or len(monomial.novikov) != n_novikov:
                raise ShapeMismatchError(f"monomial {monomial} does not fit shape ({n_vars}, {n_novikov})")
            if any(e < 0 for e in monomial.t) or any(e < 0 for e in monomial.novikov):
                raise ShapeMismatchError(f"monomial {monomial} has a negative exponent")
            value = Fraction(coefficient)
            if value and window.contains(monomial):
                key = monomial.t + monomial.novikov
                clean[key] = clean.get(key, Fraction(0)) + value

        poly = coefficient_ring(n_vars, n_novikov).from_dict({e: _to_qq(c) for e, c in clean.items() if c})
        self._init(poly, n_vars, n_novikov, window)

    def _init(self, poly: PolyElement, n_vars: int, n_novikov: int, window: Window) -> None:
        self._poly = poly
        self.n_vars = n_vars
        self.n_novikov = n_novikov
        self.window = window
        self._terms: dict[Monomial, Fraction] | None = None
        self._grades: list[tuple[int, PolyElement]] | None = None
        self._hash: int | None = None

    @classmethod
    def _raw(cls, poly: PolyElement, n_vars: int, n_novikov: int, window: Window) -> "Series":
        # Caller guarantees every term of poly is inside the window.
        series = cls.__new__(cls)
        series._init(poly, n_vars, n_novikov, window)
        return series

    # Constructors

    @classmethod
    def zero(cls, n_vars: int, n_novikov: int, window: Window | None = None) -> "Series":
        return cls._raw(coefficient_ring(n_vars, n_novikov).zero, n_vars, n_novikov, window or Window())

    @classmethod
    def constant(
        cls, value: Scalar, n_vars: int, n_novikov: int, window: Window | None = None
    ) -> "Series":
        origin = Monomial((0,) * n_vars, (0,) * n_novikov)
        return cls({origin: value}, n_vars, n_novikov, window)

    @classmethod
    def variable(cls, index: int, n_vars: int, n_novikov: int, coefficient: Scalar = 1) -> "Series":
        """The coordinate function ``coefficient * t^index``."""
        if not 0 <= index < n_vars:
            raise ShapeMismatchError(f"coordinate index {index} out of range for {n_vars} variables")
        exponents = tuple(1 if i == index else 0 for i in range(n_vars))
        return cls({Monomial(exponents, (0,) * n_novikov): coefficient}, n_vars, n_novikov)

    @classmethod
    def monomial(
        cls,
        t: Sequence[int],
        novikov: Sequence[int],
        coefficient: Scalar = 1,
        window: Window | None = None,
    ) -> "Series":
        return cls({Monomial(tuple(t), tuple(novikov)): coefficient}, len(t), len(novikov), window)

    # Inspection

    @property
    def poly(self) -> PolyElement:
        """The underlying sympy polynomial."""
        return self._poly

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        if self._terms is None:
            n = self.n_vars
            self._terms = {Monomial(e[:n], e[n:]): _to_fraction(c) for e, c in self._poly.items()}
        return MappingProxyType(self._terms)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_vars, self.n_novikov)

    @property
    def is_zero(self) -> bool:
        return not self._poly

    def __len__(self) -> int:
        return len(self._poly)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, monomial: Monomial | tuple) -> Fraction:
        key = tuple(monomial[0]) + tuple(monomial[1])
        value = self._poly.get(key)
        return _to_fraction(value) if value is not None else Fraction(0)

    def constant_term(self) -> Fraction:
        return self.coefficient(((0,) * self.n_vars, (0,) * self.n_novikov))

    def first_term(self) -> tuple[Monomial, Fraction] | None:
        """Lowest term in (t-degree, exponents, Novikov) order, or None if zero."""
        if not self._poly:
            return None
        return min(self.terms.items(), key=lambda item: item[0].sort_key())

    def at_novikov(self, novikov: Sequence[int]) -> "Series":
        """Part of the series with exactly the given Novikov exponent."""
        target = tuple(novikov)
        n = self.n_vars
        picked = self._poly.ring.from_dict({e: c for e, c in self._poly.items() if e[n:] == target})
        return Series._raw(picked, self.n_vars, self.n_novikov, self.window)

    def _check_shape(self, other: "Series") -> None:
        if self.n_vars != other.n_vars or self.n_novikov != other.n_novikov:
            raise ShapeMismatchError(f"series shapes differ: {self.shape} vs {other.shape}")

    def _scalar_value(self) -> Fraction | None:
        if not self._poly:
            return Fraction(0)
        if len(self._poly) == 1:
            ((exponents, coefficient),) = self._poly.items()
            if not any(exponents):
                return _to_fraction(coefficient)
        return None

    def _clipped(self, window: Window) -> PolyElement:
        """Polynomial restricted to ``window``, which must lie inside ``self.window``."""
        if window == self.window:
            return self._poly
        return _clip(self._poly, window, self.n_vars)

    def _graded(self) -> list[tuple[int, PolyElement]]:
        """Homogeneous parts by t-degree, lowest first."""
        if self._grades is None:
            parts: dict[int, dict[Exponents, Any]] = {}
            for exponents, coefficient in self._poly.items():
                parts.setdefault(sum(exponents[: self.n_vars]), {})[exponents] = coefficient
            self._grades = [
                (degree, self._poly.ring.from_dict(part)) for degree, part in sorted(parts.items())
            ]
        return self._grades

    # Arithmetic

    def restrict(self, window: Window) -> "Series":
        """Drop everything outside ``window``; the result window is the meet."""
        target = self.window.meet(window)
        return Series._raw(self._clipped(target), self.n_vars, self.n_novikov, target)

    def __add__(self, other: "Series | Scalar") -> "Series":
        if not isinstance(other, Series):
            other = Series.constant(other, self.n_vars, self.n_novikov)
        self._check_shape(other)
        window = self.window.meet(other.window)
        total = self._clipped(window) + other._clipped(window)
        return Series._raw(total, self.n_vars, self.n_novikov, window)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series._raw(-self._poly, self.n_vars, self.n_novikov, self.window)

    def __sub__(self, other: "Series | Scalar") -> "Series":
        if not isinstance(other, Series):
            other = Series.constant(other, self.n_vars, self.n_novikov)
        return self + (-other)

    def scale(self, factor: Scalar) -> "Series":
        return Series._raw(self._poly.mul_ground(_to_qq(factor)), self.n_vars, self.n_novikov, self.window)

    def __mul__(self, other: "Series | Scalar") -> "Series":
        if not isinstance(other, Series):
            return self.scale(other)
        self._check_shape(other)
        window = self.window.meet(other.window)

        for left, right in ((self, other), (other, self)):
            value = right._scalar_value()
            if value is not None:
                return left.scale(value).restrict(window)

        # Pair homogeneous parts so nothing above the t-bound is multiplied.
        t_bound = window.t_degree
        right_parts = other._graded()
        product = self._poly.ring.zero
        for degree_a, part_a in self._graded():
            for degree_b, part_b in right_parts:
                if t_bound is not None and degree_a + degree_b > t_bound:
                    break
                product += part_a * part_b

        product = _clip(product, Window(None, window.novikov), self.n_vars)
        return Series._raw(product, self.n_vars, self.n_novikov, window)

    __rmul__ = __mul__

    def derivative(self, index: int) -> "Series":
        """Partial derivative along t^index; the t-degree bound drops by one."""
        if not 0 <= index < self.n_vars:
            raise ShapeMismatchError(f"coordinate index {index} out of range for {self.n_vars} variables")
        lowered = rs_diff(self._poly, self._poly.ring.gens[index])
        return Series._raw(lowered, self.n_vars, self.n_novikov, self.window.shift_t(-1))

    # Equality and hashing

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.shape == other.shape and self.window == other.window and self._poly == other._poly

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self.window, frozenset(self._poly.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Series({self.to_text()!r}, window={self.window.describe()!r})"

    # Serialization

    def to_text(self, q_at_one: bool = False) -> str:
        """
        Deterministic text form, e.g. ``1/2*t1^2*t2 + 1*q1*t2``.

        With ``q_at_one`` the Novikov variables are set to 1 and equal
        t-monomials are merged.
        """
        terms: Iterable[tuple[Monomial, Fraction]]
        if q_at_one:
            merged: dict[Monomial, Fraction] = {}
            for monomial, coefficient in self.terms.items():
                key = Monomial(monomial.t, (0,) * self.n_novikov)
                merged[key] = merged.get(key, Fraction(0)) + coefficient
            terms = sorted(((m, c) for m, c in merged.items() if c), key=lambda item: item[0].sort_key())
        else:
            terms = self.sorted_terms()

        parts = []
        for monomial, coefficient in terms:
            factors = monomial.to_text()
            parts.append(f"{coefficient}*{factors}" if factors else f"{coefficient}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_vars": self.n_vars,
            "n_novikov": self.n_novikov,
            "window": self.window.to_dict(),
            "terms": [
                {"t": list(m.t), "q": list(m.novikov), "c": format_scalar(c)} for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Series":
        try:
            n_vars = int(data["n_vars"])
            n_novikov = int(data["n_novikov"])
            window = Window.from_dict(data.get("window") or {})
            terms: dict[Monomial, Fraction] = {}
            for i, term in enumerate(data.get("terms", [])):
                monomial = Monomial(tuple(term["t"]), tuple(term["q"]))
                terms[monomial] = terms.get(monomial, Fraction(0)) + parse_scalar(
                    term["c"], f"terms[{i}].c"
                )
        except (KeyError, TypeError) as e:
            raise SchemaError(f"malformed series document: {e}") from e
        return cls(terms, n_vars, n_novikov, window)


def equal_within_window(a: Series, b: Series) -> tuple[bool, Window]:
    """
    Compare two series on the meet of their windows.

    Returns:
        (equal, window) where window is where the comparison holds
    """
    a._check_shape(b)
    window = a.window.meet(b.window)
    if window.is_empty:
        raise WindowError("series windows do not overlap")
    return a.restrict(window) == b.restrict(window), window


def exponential_of_linear(
    coefficients: Sequence[Scalar],
    novikov: Sequence[int],
    window: Window,
    n_novikov: int,
) -> Series:
    """
    ``q^novikov * exp(sum_i coefficients[i] * t^i)`` truncated to ``window``.
    """
    n_vars = len(coefficients)
    tag = Monomial((0,) * n_vars, tuple(novikov))
    if len(tag.novikov) != n_novikov:
        raise ShapeMismatchError("Novikov exponent does not match the Novikov rank")
    if not window.contains(tag):
        return Series.zero(n_vars, n_novikov, window)
    if not any(coefficients):
        return Series({tag: 1}, n_vars, n_novikov, window)
    if window.t_degree is None:
        raise WindowError("exponential of a nonzero linear form needs a bounded t-degree window")

    # exp of a sum is the product of one-variable exponentials.
    gens = coefficient_ring(n_vars, n_novikov).gens
    total = Series.constant(1, n_vars, n_novikov, window)
    for index, coefficient in enumerate(coefficients):
        if not coefficient:
            continue
        gen = gens[index]
        factor = rs_exp(gen.mul_ground(_to_qq(coefficient)), gen, window.t_degree + 1)
        total = total * Series._raw(_clip(factor, window, n_vars), n_vars, n_novikov, window)

    return total * Series({tag: 1}, n_vars, n_novikov, window)


def divisor_exponential(model: "CohomologyModel", beta: Sequence[int], window: Window) -> Series:
    """
    ``q^beta * exp(sum over divisor classes D of (D . beta) t^D)`` truncated to ``window``.
    """
    coefficients = [Fraction(0)] * model.n
    for index, pairing in zip(model.divisor_indices, model.curve_pairing(beta), strict=True):
        coefficients[index] = Fraction(pairing)
    return exponential_of_linear(coefficients, beta, window, model.curve_rank)
