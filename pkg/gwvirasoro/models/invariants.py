"""Invariant tables and genus 0/1 potentials built from them."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..exceptions import SchemaError
from ..utils.rational import format_scalar, parse_index, parse_scalar
from .cohomology import CohomologyModel
from .series import Series, Window


@dataclass(frozen=True)
class InvariantEntry:
    """
    One primary invariant <gamma_{a1} ... gamma_{an}>_{g, beta}.

    Insertions are 0-based basis indices kept in sorted order.
    """

    genus: int
    beta: tuple[int, ...]
    insertions: tuple[int, ...]
    value: Fraction

    def __post_init__(self):
        if self.genus not in (0, 1):
            raise SchemaError(f"genus must be 0 or 1, got {self.genus}")
        if any(b < 0 for b in self.beta):
            raise SchemaError(f"curve class {self.beta} is not effective")
        object.__setattr__(self, "beta", tuple(self.beta))
        object.__setattr__(self, "insertions", tuple(sorted(self.insertions)))
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def is_classical(self) -> bool:
        return not any(self.beta)

    @property
    def key(self) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        return (self.genus, self.beta, self.insertions)

    def to_dict(self) -> dict[str, Any]:
        return {
            "g": self.genus,
            "beta": list(self.beta),
            "insertions": [i + 1 for i in self.insertions],
            "value": format_scalar(self.value),
        }

    @classmethod
    def from_dict(cls, data: Any, rank: int, curve_rank: int, where: str = "entry") -> "InvariantEntry":
        if not isinstance(data, dict):
            raise SchemaError(f"{where}: expected an object")
        unknown = set(data) - {"g", "beta", "insertions", "value"}
        if unknown:
            raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")
        try:
            genus, beta, insertions, value = data["g"], data["beta"], data["insertions"], data["value"]
        except KeyError as e:
            raise SchemaError(f"{where}: missing key {e}") from e

        if not isinstance(beta, list) or len(beta) != curve_rank:
            raise SchemaError(f"{where}.beta: expected a list of {curve_rank} integers")
        if any(isinstance(b, bool) or not isinstance(b, int) for b in beta):
            raise SchemaError(f"{where}.beta: entries must be integers")
        if not isinstance(insertions, list):
            raise SchemaError(f"{where}.insertions: expected a list")
        if isinstance(genus, bool) or not isinstance(genus, int):
            raise SchemaError(f"{where}.g: expected an integer")

        return cls(
            genus=genus,
            beta=tuple(beta),
            insertions=tuple(
                parse_index(i, rank, f"{where}.insertions[{k}]") for k, i in enumerate(insertions)
            ),
            value=parse_scalar(value, f"{where}.value"),
        )


@dataclass(frozen=True)
class GWPotential:
    """Genus 0 and genus 1 potentials on the small phase space, exact inside ``window``."""

    model: CohomologyModel
    f0: Series
    f1: Series
    window: Window
    table: tuple[InvariantEntry, ...] = ()
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def free_energy(self, genus: int) -> Series:
        if genus == 0:
            return self.f0
        if genus == 1:
            return self.f1
        raise ValueError(f"only genus 0 and 1 are supported, got {genus}")

    def to_dict(self, q_at_one: bool = False) -> dict[str, Any]:
        return {
            "model": self.model.name,
            "window": self.window.to_dict(),
            "F0": self.f0.to_text(q_at_one),
            "F1": self.f1.to_text(q_at_one),
            "F0_series": self.f0.to_dict(),
            "F1_series": self.f1.to_dict(),
            "table": [entry.to_dict() for entry in self.table],
            "provenance": list(self.provenance),
        }
