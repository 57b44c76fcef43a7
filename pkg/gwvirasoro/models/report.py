"""Verification outcomes and check reports."""

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, NamedTuple

from .series import Series, Window
from .vector_field import VectorField


class Verification(NamedTuple):
    """Outcome of comparing two sides of an identity."""

    passed: bool
    window: Window
    residual: Series | VectorField | None = None

    def __bool__(self) -> bool:
        return self.passed

    @staticmethod
    def combine(results: "list[Verification]") -> "Verification":
        """All must pass; window is the meet; residual is the first failure's."""
        if not results:
            raise ValueError("nothing to combine")
        window = reduce(Window.meet, (r.window for r in results))
        for result in results:
            if not result.passed:
                return Verification(False, window, result.residual)
        return Verification(True, window, None)


def first_failing_term(residual: Series | VectorField) -> str:
    """Lowest nonzero monomial of a residual, labelled by component for fields."""
    if isinstance(residual, Series):
        term = residual.first_term()
        if term is None:
            return ""
        monomial, coefficient = term
        return f"{coefficient}*{monomial.to_text()}" if monomial.to_text() else str(coefficient)

    for index, component in enumerate(residual.components):
        text = first_failing_term(component)
        if text:
            return f"g{index + 1}: {text}"
    return ""


@dataclass
class CheckReport:
    """One named check as it appears in CLI output."""

    name: str
    passed: bool
    window: Window
    residual: str = ""
    millis: float | None = None
    notes: list[str] = field(default_factory=list)

    @classmethod
    def from_verification(
        cls, name: str, result: Verification, notes: list[str] | None = None
    ) -> "CheckReport":
        notes = list(notes or [])
        residual = ""
        if not result.passed and result.residual is not None:
            restricted = result.residual.restrict(result.window)
            residual = restricted.to_text()
            notes.insert(0, f"first failing term {first_failing_term(restricted)}")
        return cls(name=name, passed=result.passed, window=result.window, residual=residual, notes=notes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "pass": self.passed,
            "window": self.window.to_dict(),
            "residual": self.residual,
            "millis": round(self.millis, 3) if self.millis is not None else None,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name}: verified through {self.window.describe()}"
        if self.millis is not None:
            line += f" ({self.millis:.1f} ms)"
        if self.notes:
            line += " | " + "; ".join(self.notes)
        if not self.passed and self.residual:
            line += f"\n    residual: {self.residual}"
        return line
