"""Model documents shipped with the package, in the on-disk file format."""

from typing import Any

POINT_DOCUMENT: dict[str, Any] = {
    "name": "point",
    "dim_c": 0,
    "basis": [{"label": "1", "p": 0, "q": 0}],
    "triple": [[1, 1, 1, 1]],
    "c1": [0],
    "cdm1_pairing": [0],
    "curves": {"rank": 0, "divisor_pairing": []},
}

P1_DOCUMENT: dict[str, Any] = {
    "name": "P1",
    "dim_c": 1,
    "basis": [{"label": "1", "p": 0, "q": 0}, {"label": "omega", "p": 1, "q": 1}],
    "triple": [[1, 1, 2, 1]],
    "c1": [0, 2],
    "cdm1_pairing": [0, 1],
    "curves": {"rank": 1, "divisor_pairing": [[1]]},
    "int_c1_cdm1": 2,
}

P2_DOCUMENT: dict[str, Any] = {
    "name": "P2",
    "dim_c": 2,
    "basis": [
        {"label": "1", "p": 0, "q": 0},
        {"label": "H", "p": 1, "q": 1},
        {"label": "H^2", "p": 2, "q": 2},
    ],
    "triple": [[1, 1, 3, 1], [1, 2, 2, 1]],
    "c1": [0, 3, 0],
    "cdm1_pairing": [0, 3, 0],
    "curves": {"rank": 1, "divisor_pairing": [[1]]},
    "int_c1_cdm1": 9,
}

BUILTIN_DOCUMENTS: dict[str, dict[str, Any]] = {
    "point": POINT_DOCUMENT,
    "p1": P1_DOCUMENT,
    "p2": P2_DOCUMENT,
}
