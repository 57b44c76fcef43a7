"""Vector fields on the small phase space, with series coefficients."""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from ..exceptions import ShapeMismatchError, WindowError
from .series import Scalar, Series, Window


@dataclass(frozen=True)
class VectorField:
    """``sum_alpha components[alpha] * gamma_alpha``."""

    components: tuple[Series, ...]

    def __post_init__(self):
        if not self.components:
            raise ShapeMismatchError("vector field needs at least one component")
        if len(self.components) != self.components[0].n_vars:
            raise ShapeMismatchError(
                f"vector field has {len(self.components)} components on {self.components[0].n_vars} coordinates"
            )
        shape = self.components[0].shape
        if any(c.shape != shape for c in self.components):
            raise ShapeMismatchError("vector field components have different shapes")

    @classmethod
    def constant(cls, coefficients: Sequence[Scalar], n_novikov: int) -> "VectorField":
        n = len(coefficients)
        return cls(tuple(Series.constant(c, n, n_novikov) for c in coefficients))

    @classmethod
    def basis(cls, index: int, n_vars: int, n_novikov: int) -> "VectorField":
        return cls.constant([1 if i == index else 0 for i in range(n_vars)], n_novikov)

    @classmethod
    def zero(cls, n_vars: int, n_novikov: int, window: Window | None = None) -> "VectorField":
        return cls(tuple(Series.zero(n_vars, n_novikov, window) for _ in range(n_vars)))

    @property
    def n_vars(self) -> int:
        return self.components[0].n_vars

    @property
    def n_novikov(self) -> int:
        return self.components[0].n_novikov

    @property
    def window(self) -> Window:
        return reduce(Window.meet, (c.window for c in self.components))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def constant_coefficients(self) -> tuple[Fraction, ...] | None:
        """Coefficients if every component is a constant, else None."""
        values = []
        for component in self.components:
            value = component._scalar_value()
            if value is None:
                return None
            values.append(value)
        return tuple(values)

    def _check_shape(self, other: "VectorField") -> None:
        if len(self.components) != len(other.components):
            raise ShapeMismatchError("vector fields have different ranks")

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check_shape(other)
        return VectorField(tuple(a + b for a, b in zip(self.components, other.components, strict=True)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check_shape(other)
        return VectorField(tuple(a - b for a, b in zip(self.components, other.components, strict=True)))

    def __neg__(self) -> "VectorField":
        return VectorField(tuple(-c for c in self.components))

    def scale(self, factor: Scalar) -> "VectorField":
        return VectorField(tuple(c.scale(factor) for c in self.components))

    def times(self, function: Series) -> "VectorField":
        """Multiply every component by a function."""
        return VectorField(tuple(c * function for c in self.components))

    def restrict(self, window: Window) -> "VectorField":
        return VectorField(tuple(c.restrict(window) for c in self.components))

    def to_text(self, q_at_one: bool = False) -> str:
        parts = [
            f"[{c.to_text(q_at_one)}]*g{i + 1}" for i, c in enumerate(self.components) if not c.is_zero
        ]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"VectorField({self.to_text()!r})"


def fields_equal_within_window(a: VectorField, b: VectorField) -> tuple[bool, Window]:
    """Componentwise comparison on the meet of all component windows."""
    a._check_shape(b)
    window = a.window.meet(b.window)
    if window.is_empty:
        raise WindowError("vector field windows do not overlap")
    equal = all(x.restrict(window) == y.restrict(window) for x, y in zip(a.components, b.components, strict=True))
    return equal, window
