"""
Loading and validation of model files and invariant tables.
"""

import copy
import json
from collections.abc import Iterable, Mapping
from fractions import Fraction
from itertools import permutations
from pathlib import Path
from typing import Any

from ..exceptions import ModelValidationError, SchemaError
from ..models import CohomologyModel, InvariantEntry
from ..models.constants import BUILTIN_PREFIX
from ..utils import get_logger, invert_matrix, parse_index, parse_scalar
from ..utils.rational import format_scalar
from .builtins import BUILTIN_DOCUMENTS

REQUIRED_MODEL_KEYS = frozenset({"name", "dim_c", "basis", "triple", "c1", "cdm1_pairing", "curves"})
OPTIONAL_MODEL_KEYS = frozenset({"int_c1_cdm1"})

logger = get_logger(__name__)


def read_json(path: str | Path) -> Any:
    """Read a JSON document, turning I/O and syntax problems into SchemaError."""
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e


def _require_int(value: Any, where: str, minimum: int | None = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise SchemaError(f"{where}: must be at least {minimum}")
    return value


def _require_list(value: Any, where: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list")
    if length is not None and len(value) != length:
        raise SchemaError(f"{where}: expected {length} entries, got {len(value)}")
    return value


class ModelLoader:
    """Builds validated CohomologyModel objects from model documents."""

    def __init__(self) -> None:
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    def resolve(self, reference: str) -> CohomologyModel:
        """
        Load a model from ``builtin:NAME`` or a file path.

        Args:
            reference: Built-in reference or path to a model file

        Returns:
            Validated model
        """
        if reference.startswith(BUILTIN_PREFIX):
            return self.load_builtin(reference[len(BUILTIN_PREFIX) :])
        return self.load_path(reference)

    def load_builtin(self, name: str) -> CohomologyModel:
        document = BUILTIN_DOCUMENTS.get(name.lower())
        if document is None:
            raise SchemaError(f"unknown built-in model {name!r}; choose from {', '.join(BUILTIN_DOCUMENTS)}")
        return self.load(copy.deepcopy(document))

    def load_path(self, path: str | Path) -> CohomologyModel:
        self.logger.info(f"Loading model file {path}")
        return self.load(read_json(path))

    def load(self, document: Any) -> CohomologyModel:
        """
        Parse, derive and validate a model document.

        Raises:
            SchemaError: If the document does not match the model file schema
            ModelValidationError: If the data is structurally inconsistent
        """
        if not isinstance(document, Mapping):
            raise SchemaError("model document must be an object")

        keys = set(document)
        unknown = keys - REQUIRED_MODEL_KEYS - OPTIONAL_MODEL_KEYS
        if unknown:
            raise SchemaError(f"unknown model keys: {', '.join(sorted(unknown))}")
        missing = REQUIRED_MODEL_KEYS - keys
        if missing:
            raise SchemaError(f"missing model keys: {', '.join(sorted(missing))}")

        name = document["name"]
        if not isinstance(name, str) or not name:
            raise SchemaError("name: expected a non-empty string")
        dim = _require_int(document["dim_c"], "dim_c")

        labels, hodge = self._parse_basis(document["basis"], dim)
        n = len(hodge)
        triple = self._parse_triple(document["triple"], n)
        c1 = tuple(
            parse_scalar(v, f"c1[{i}]") for i, v in enumerate(_require_list(document["c1"], "c1", n))
        )
        cdm1 = tuple(
            parse_scalar(v, f"cdm1_pairing[{i}]")
            for i, v in enumerate(_require_list(document["cdm1_pairing"], "cdm1_pairing", n))
        )
        divisor_indices = tuple(i for i, pq in enumerate(hodge) if pq == (1, 1))
        curve_rank, divisor_pairing = self._parse_curves(document["curves"], len(divisor_indices))

        self._check_hodge(hodge, dim)
        self._check_triple_grading(triple, hodge, dim)
        self._check_c1(c1, cdm1, hodge, dim)

        eta = tuple(tuple(triple[0][a][b] for b in range(n)) for a in range(n))
        try:
            eta_inverse = invert_matrix(eta)
        except ModelValidationError as e:
            raise ModelValidationError(
                f"pairing eta = k_1ab is degenerate; rows: {[[format_scalar(v) for v in row] for row in eta]}"
            ) from e

        half = Fraction(dim - 1, 2)
        b = tuple(Fraction(p) - half for p, _ in hodge)

        cup = tuple(
            tuple(
                tuple(sum((triple[a][bb][e] * eta_inverse[e][c] for e in range(n)), Fraction(0)) for c in range(n))
                for bb in range(n)
            )
            for a in range(n)
        )
        c1_matrix = tuple(
            tuple(sum((c1[d] * cup[d][a][bb] for d in range(n)), Fraction(0)) for bb in range(n))
            for a in range(n)
        )
        c1_form = tuple(
            tuple(sum((c1[d] * triple[d][a][bb] for d in range(n)), Fraction(0)) for bb in range(n))
            for a in range(n)
        )
        int_c1_cdm1 = sum((c * i for c, i in zip(c1, cdm1, strict=True)), Fraction(0))

        if "int_c1_cdm1" in document:
            declared = parse_scalar(document["int_c1_cdm1"], "int_c1_cdm1")
            if declared != int_c1_cdm1:
                raise ModelValidationError(
                    f"int_c1_cdm1 is declared as {declared} but c1 and cdm1_pairing give {int_c1_cdm1}"
                )

        model = CohomologyModel(
            name=name,
            dim=dim,
            labels=labels,
            hodge=hodge,
            triple=triple,
            c1=c1,
            cdm1_pairing=cdm1,
            curve_rank=curve_rank,
            divisor_pairing=divisor_pairing,
            eta=eta,
            eta_inverse=eta_inverse,
            b=b,
            cup=cup,
            c1_matrix=c1_matrix,
            c1_form=c1_form,
            int_c1_cdm1=int_c1_cdm1,
            divisor_indices=divisor_indices,
        )

        failures = model_identity_failures(model)
        if failures:
            raise ModelValidationError("; ".join(failures))

        self.logger.debug(f"Loaded model {name}: rank {n}, dimension {dim}, curve rank {curve_rank}")
        return model

    def _parse_basis(self, basis: Any, dim: int) -> tuple[tuple[str, ...], tuple[tuple[int, int], ...]]:
        entries = _require_list(basis, "basis")
        if not entries:
            raise SchemaError("basis: must not be empty")

        labels = []
        hodge = []
        for i, entry in enumerate(entries):
            where = f"basis[{i}]"
            if not isinstance(entry, Mapping):
                raise SchemaError(f"{where}: expected an object")
            unknown = set(entry) - {"label", "p", "q"}
            if unknown:
                raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")
            label = entry.get("label", f"g{i + 1}")
            if not isinstance(label, str):
                raise SchemaError(f"{where}.label: expected a string")
            if "p" not in entry or "q" not in entry:
                raise SchemaError(f"{where}: p and q are required")
            p = _require_int(entry["p"], f"{where}.p")
            q = _require_int(entry["q"], f"{where}.q")
            if p > dim or q > dim:
                raise ModelValidationError(f"{where}: ({p}, {q}) exceeds dimension {dim}")
            labels.append(label)
            hodge.append((p, q))
        return tuple(labels), tuple(hodge)

    def _parse_triple(self, triple: Any, n: int) -> tuple:
        values: dict[tuple[int, int, int], Fraction] = {}
        for k, entry in enumerate(_require_list(triple, "triple")):
            where = f"triple[{k}]"
            entry = _require_list(entry, where, 4)
            indices = tuple(parse_index(entry[j], n, f"{where}[{j}]") for j in range(3))
            value = parse_scalar(entry[3], f"{where}[3]")
            for perm in set(permutations(indices)):
                if perm in values and values[perm] != value:
                    shown = tuple(i + 1 for i in indices)
                    raise ModelValidationError(
                        f"triple intersection k{shown} given twice with values {values[perm]} and {value}"
                    )
                values[perm] = value

        return tuple(
            tuple(tuple(values.get((a, b, c), Fraction(0)) for c in range(n)) for b in range(n)) for a in range(n)
        )

    def _parse_curves(self, curves: Any, n_divisors: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
        if not isinstance(curves, Mapping):
            raise SchemaError("curves: expected an object")
        unknown = set(curves) - {"rank", "divisor_pairing"}
        if unknown:
            raise SchemaError(f"curves: unknown keys {sorted(unknown)}")
        rank = _require_int(curves.get("rank"), "curves.rank")
        rows = _require_list(curves.get("divisor_pairing", []), "curves.divisor_pairing", rank)
        pairing = tuple(
            tuple(
                _require_int(v, f"curves.divisor_pairing[{i}][{j}]", minimum=None)
                for j, v in enumerate(_require_list(row, f"curves.divisor_pairing[{i}]", n_divisors))
            )
            for i, row in enumerate(rows)
        )
        return rank, pairing

    def _check_hodge(self, hodge: tuple[tuple[int, int], ...], dim: int) -> None:
        if hodge[0] != (0, 0):
            raise ModelValidationError(f"basis element 1 must be the identity class (0, 0), got {hodge[0]}")

        for i, (p, q) in enumerate(hodge):
            if (p + q) % 2:
                raise ModelValidationError(f"basis element {i + 1} has odd degree ({p}, {q})")

        for i in range(1, len(hodge)):
            previous, current = hodge[i - 1], hodge[i]
            if (sum(current), current[0]) < (sum(previous), previous[0]):
                raise ModelValidationError(
                    f"basis ordering violated at elements {i} and {i + 1}: {previous} before {current}"
                )

    def _check_triple_grading(self, triple: tuple, hodge: tuple[tuple[int, int], ...], dim: int) -> None:
        n = len(hodge)
        for a in range(n):
            for b in range(a, n):
                for c in range(b, n):
                    if not triple[a][b][c]:
                        continue
                    p = hodge[a][0] + hodge[b][0] + hodge[c][0]
                    q = hodge[a][1] + hodge[b][1] + hodge[c][1]
                    if (p, q) != (dim, dim):
                        raise ModelValidationError(
                            f"k({a + 1}, {b + 1}, {c + 1}) is nonzero but the Hodge degrees sum to ({p}, {q})"
                        )

    def _check_c1(
        self, c1: tuple[Fraction, ...], cdm1: tuple[Fraction, ...], hodge: tuple[tuple[int, int], ...], dim: int
    ) -> None:
        for i, (value, pq) in enumerate(zip(c1, hodge, strict=True)):
            if value and pq != (1, 1):
                raise ModelValidationError(f"c1 has a component along basis element {i + 1} of type {pq}")
        for i, (value, pq) in enumerate(zip(cdm1, hodge, strict=True)):
            if value and pq != (1, 1):
                raise ModelValidationError(f"cdm1_pairing is nonzero on basis element {i + 1} of type {pq}")


def model_identity_failures(model: CohomologyModel) -> list[str]:
    """
    Re-verify the structural identities of a derived model.

    Returns:
        Human readable failures; empty when the model is consistent
    """
    n = model.n
    failures = []

    for a in range(n):
        for c in range(n):
            value = sum((model.eta[a][e] * model.eta_inverse[e][c] for e in range(n)), Fraction(0))
            if value != (1 if a == c else 0):
                failures.append(f"eta times eta inverse differs from the identity at ({a + 1}, {c + 1})")

    for a in range(n):
        for b in range(n):
            for c in range(n):
                left = [
                    sum((model.cup[a][b][e] * model.cup[e][c][f] for e in range(n)), Fraction(0)) for f in range(n)
                ]
                right = [
                    sum((model.cup[b][c][e] * model.cup[a][e][f] for e in range(n)), Fraction(0)) for f in range(n)
                ]
                if left != right:
                    failures.append(f"cup product is not associative on ({a + 1}, {b + 1}, {c + 1})")

    for a in range(n):
        for c in range(n):
            if model.eta_inverse[a][c] and model.b[a] + model.b[c] != 1:
                failures.append(f"dual pair ({a + 1}, {c + 1}) has b sum {model.b[a] + model.b[c]}, expected 1")

    for a in range(n):
        for c in range(n):
            lowered = sum((model.c1_matrix[a][g] * model.eta[g][c] for g in range(n)), Fraction(0))
            if model.c1_form[a][c] != model.c1_form[c][a] or lowered != model.c1_form[a][c]:
                failures.append(f"C form is inconsistent at ({a + 1}, {c + 1})")

    return failures


def load_model(document: Any) -> CohomologyModel:
    """Validated model from a parsed model document."""
    return ModelLoader().load(document)


def load_table(document: Any, model: CohomologyModel, source: str = "table") -> list[InvariantEntry]:
    """
    Parse an invariant table document.

    Args:
        document: Parsed JSON array of entries
        model: Model the insertion indices refer to
        source: Name used in error messages

    Returns:
        Entries in document order
    """
    entries = _require_list(document, source)
    return [
        InvariantEntry.from_dict(entry, model.n, model.curve_rank, f"{source}[{i}]")
        for i, entry in enumerate(entries)
    ]


def load_table_path(path: str | Path, model: CohomologyModel) -> list[InvariantEntry]:
    logger.info(f"Loading invariant table {path}")
    return load_table(read_json(path), model, str(path))


def dump_table(entries: Iterable[InvariantEntry]) -> list[dict[str, Any]]:
    """Entries in file format, sorted by genus, curve class and insertions."""
    return [entry.to_dict() for entry in sorted(entries, key=lambda e: e.key)]
