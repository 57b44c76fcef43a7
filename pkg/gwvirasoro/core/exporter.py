"""Report and artifact writer for gwvirasoro."""

import json
import sys
from collections.abc import Iterable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

from ..models import CheckReport, CohomologyModel, GWPotential, InvariantEntry
from ..utils import RunConfig, get_logger
from .loader import dump_table


def _vector(values: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _matrix(rows: Sequence[Sequence[Fraction]]) -> str:
    return "[" + "; ".join(" ".join(str(v) for v in row) for row in rows) + "]"


def describe_model(model: CohomologyModel) -> list[str]:
    """Derived constants of a model as text lines, indices 1-based."""
    c1, linear = model.euler_constants()
    lines = [
        f"model {model.name}: dim_c = {model.dim}, rank = {model.n}, curve rank = {model.curve_rank}",
        "basis = " + ", ".join(f"{label}({p},{q})" for label, (p, q) in zip(model.labels, model.hodge, strict=True)),
        f"eta = {_matrix(model.eta)}",
        f"eta^-1 = {_matrix(model.eta_inverse)}",
        f"b = {_vector(model.b)}",
        f"C = {_matrix(model.c1_matrix)}",
        f"E = {_vector(c1)} + {_vector(linear)}.t",
        f"int c1 c_(d-1) = {model.int_c1_cdm1}",
    ]
    if model.divisor_indices:
        lines.append("divisors = " + ", ".join(f"g{i + 1}" for i in model.divisor_indices))
    return lines


class ReportExporter:
    """Writes check reports, potential artifacts and tables to a file or a stream."""

    def __init__(self, output_path: str | None = None, stream: TextIO | None = None) -> None:
        self.output_path = Path(output_path) if output_path else None
        self.stream = stream
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    def _write(self, text: str) -> str:
        """Write text to the output path, or to the stream when none was given."""
        if self.output_path is None:
            stream = self.stream or sys.stdout
            stream.write(text)
            stream.flush()
            return "<stdout>"

        self.output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.output_path, "w", encoding="utf-8") as f:
            f.write(text)
        return str(self.output_path)

    def _write_json(self, data: Any) -> str:
        return self._write(json.dumps(data, ensure_ascii=False, indent=2) + "\n")

    def export_reports(self, reports: Iterable[CheckReport], output_format: str = "json") -> str:
        """
        Write check reports, one per line.

        Args:
            reports: Reports in output order
            output_format: "json" for JSON lines, "text" for readable lines

        Returns:
            Where the reports went
        """
        reports = list(reports)
        if output_format == "json":
            lines = [report.to_json_line() for report in reports]
        elif output_format == "text":
            lines = [report.to_text() for report in reports]
            passed = sum(1 for r in reports if r.passed)
            lines.append(f"{passed}/{len(reports)} checks passed")
        else:
            raise ValueError(f"Unknown report format: {output_format}")

        target = self._write("".join(line + "\n" for line in lines))
        self.logger.info(f"{len(reports)} report(s) written to {target}")
        return target

    def export_potential(self, potential: GWPotential, config: RunConfig | None = None) -> str:
        """
        Write a potential artifact: model constants, F0 and F1, the normalized table and provenance.

        Returns:
            Where the artifact went
        """
        data: dict[str, Any] = {
            "model": potential.model.to_dict(),
            "potential": potential.to_dict(q_at_one=False),
            "potential_at_q1": {
                "F0": potential.f0.to_text(q_at_one=True),
                "F1": potential.f1.to_text(q_at_one=True),
            },
        }
        if config is not None:
            data["config"] = config.to_dict()

        target = self._write_json(data)
        self.logger.info(f"Potential artifact written to {target}")
        return target

    def export_table(self, entries: Iterable[InvariantEntry]) -> str:
        """Write entries in the invariant table schema."""
        rows = dump_table(entries)
        target = self._write_json(rows)
        self.logger.info(f"{len(rows)} table entr{'y' if len(rows) == 1 else 'ies'} written to {target}")
        return target

    def export_model_summary(self, model: CohomologyModel, output_format: str = "text") -> str:
        """Write derived model constants as text lines or as one JSON document."""
        if output_format == "json":
            return self._write_json(model.to_dict())
        return self._write("".join(line + "\n" for line in describe_model(model)))
