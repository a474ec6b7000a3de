"""Factor-system documents: parsing, serialization, built-in systems.

Documents are UTF-8 JSON with every rational written as a string
("p/q", "p", or a decimal literal), never as a float, so a round trip
through a file preserves the datum exactly.  Schema:

    {
      "name": str,
      "dimension": d,
      "K_basis": [[rat, ...], ...],        # d x d, rows
      "A_basis": ...,  "Gamma_basis": ...,
      "digits_B": [[rat, ...], ...],       # vectors of length d
      "digits_L": [[rat, ...], ...],
      "omega":   [[[rat,...], [rat,...]], ...]   # optional [lo, hi) boxes
      "D_prime": ...                             # optional
    }

Three systems ship built in: "scale4" (the two-interval pair on the
line), "scale4x2" (its planar product), and "middlethird" (the classic
ternary Cantor datum, which is *not* a spectral pair -- it is the
negative control and fails validation by design).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import exact
from .boxes import Box, BoxUnion
from .errors import ParseError, ValidationFailed
from .lattice import Lattice, SimpleFactor, ValidationReport, validate_simple_factor


@dataclass(frozen=True)
class LoadedSpec:
    """A parsed factor system plus its optional geometry and report."""

    system: SimpleFactor
    omega: BoxUnion | None
    d_prime: BoxUnion | None
    report: ValidationReport

    @property
    def name(self) -> str:
        return self.system.name


BUILTIN_DOCUMENTS: dict[str, dict] = {
    "scale4": {
        "name": "scale4",
        "dimension": 1,
        "K_basis": [["1"]],
        "A_basis": [["1/2"]],
        "Gamma_basis": [["1/4"]],
        "digits_B": [["0"], ["1/2"]],
        "digits_L": [["0"], ["1"]],
        "omega": [[["0"], ["1/4"]], [["1/2"], ["3/4"]]],
        "D_prime": [[["0"], ["1/4"]]],
    },
    "scale4x2": {
        "name": "scale4x2",
        "dimension": 2,
        "K_basis": [["1", "0"], ["0", "1"]],
        "A_basis": [["1/2", "0"], ["0", "1/2"]],
        "Gamma_basis": [["1/4", "0"], ["0", "1/4"]],
        "digits_B": [["0", "0"], ["1/2", "0"], ["0", "1/2"], ["1/2", "1/2"]],
        "digits_L": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]],
        "omega": [
            [["0", "0"], ["1/4", "1/4"]],
            [["0", "1/2"], ["1/4", "3/4"]],
            [["1/2", "0"], ["3/4", "1/4"]],
            [["1/2", "1/2"], ["3/4", "3/4"]],
        ],
        "D_prime": [[["0", "0"], ["1/4", "1/4"]]],
    },
    "middlethird": {
        "name": "middlethird",
        "dimension": 1,
        "K_basis": [["1"]],
        "A_basis": [["1/3"]],
        "Gamma_basis": [["1/3"]],
        "digits_B": [["0"], ["2/3"]],
        "digits_L": [["0"], ["1"]],
    },
}


def builtin_names() -> tuple[str, ...]:
    return tuple(BUILTIN_DOCUMENTS)


def _context(path: str, action):
    try:
        return action()
    except ParseError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse_matrix(document: dict, key: str, dim: int):
    rows = document.get(key)
    if rows is None:
        raise ParseError(f"{key}: missing")
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ParseError(f"{key}: expected a {dim}x{dim} array")
    return tuple(
        tuple(
            _context(f"{key}[{i}][{j}]", lambda v=v: exact.as_rational(v))
            for j, v in enumerate(row)
        )
        for i, row in enumerate(rows)
    )


def _parse_vectors(document: dict, key: str, dim: int):
    rows = document.get(key)
    if rows is None:
        raise ParseError(f"{key}: missing")
    return tuple(
        _context(f"{key}[{i}]", lambda row=row: exact.as_vector(row, dim))
        for i, row in enumerate(rows)
    )


def _parse_boxes(document: dict, key: str, dim: int) -> BoxUnion | None:
    entries = document.get(key)
    if entries is None:
        return None
    boxes = []
    for i, entry in enumerate(entries):
        if len(entry) != 2:
            raise ParseError(f"{key}[{i}]: expected [lo, hi] corner pair")
        lo = _context(f"{key}[{i}][0]", lambda: exact.as_vector(entry[0], dim))
        hi = _context(f"{key}[{i}][1]", lambda: exact.as_vector(entry[1], dim))
        boxes.append(_context(f"{key}[{i}]", lambda: Box(lo, hi)))
    return _context(key, lambda: BoxUnion(tuple(boxes)))


def parse_document(document: dict) -> LoadedSpec:
    """Build a LoadedSpec from an already-decoded JSON document."""
    dim = document.get("dimension")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("dimension: expected a positive integer")
    name = document.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    system = _context("system", lambda: SimpleFactor(
        K=Lattice(_parse_matrix(document, "K_basis", dim)),
        A=Lattice(_parse_matrix(document, "A_basis", dim)),
        Gamma=Lattice(_parse_matrix(document, "Gamma_basis", dim)),
        digits=_parse_vectors(document, "digits_B", dim),
        freq_digits=_parse_vectors(document, "digits_L", dim),
        name=name,
    ))
    return LoadedSpec(
        system=system,
        omega=_parse_boxes(document, "omega", dim),
        d_prime=_parse_boxes(document, "D_prime", dim),
        report=validate_simple_factor(system),
    )


def parse_spec(source, require_valid: bool = True) -> LoadedSpec:
    """Load a factor system from a built-in name, path, or document dict.

    Raises ParseError on malformed input and, when ``require_valid``,
    ValidationFailed (carrying the report) on a structurally broken
    system.  Pass require_valid=False to load negative controls.
    """
    if isinstance(source, dict):
        document = source
    elif isinstance(source, (str, Path)) and str(source) in BUILTIN_DOCUMENTS:
        document = BUILTIN_DOCUMENTS[str(source)]
    else:
        path = Path(source)
        if not path.exists():
            raise ParseError(
                f"{source!r} is neither a built-in name {builtin_names()} "
                "nor an existing file"
            )
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc})") from exc
        if not isinstance(document, dict):
            raise ParseError(f"{path}: expected a JSON object")
    loaded = parse_document(document)
    if require_valid and not loaded.report.ok:
        failures = ", ".join(c.name for c in loaded.report.failures())
        raise ValidationFailed(
            loaded.report, f"validation failed: {failures}"
        )
    return loaded


def _format_boxes(union: BoxUnion | None):
    if union is None:
        return None
    return [
        [[exact.format_rational(c) for c in box.lo],
         [exact.format_rational(c) for c in box.hi]]
        for box in union.boxes
    ]


def document_from(
    system: SimpleFactor,
    omega: BoxUnion | None = None,
    d_prime: BoxUnion | None = None,
) -> dict:
    """Serialize a system (and optional geometry) back to document form."""
    document = {
        "name": system.name,
        "dimension": system.dim,
        "K_basis": [[exact.format_rational(v) for v in row] for row in system.K.basis],
        "A_basis": [[exact.format_rational(v) for v in row] for row in system.A.basis],
        "Gamma_basis": [
            [exact.format_rational(v) for v in row] for row in system.Gamma.basis
        ],
        "digits_B": [[exact.format_rational(v) for v in b] for b in system.digits],
        "digits_L": [[exact.format_rational(v) for v in l] for l in system.freq_digits],
    }
    if omega is not None:
        document["omega"] = _format_boxes(omega)
    if d_prime is not None:
        document["D_prime"] = _format_boxes(d_prime)
    return document


def dumps_spec(
    system: SimpleFactor,
    omega: BoxUnion | None = None,
    d_prime: BoxUnion | None = None,
) -> str:
    return json.dumps(document_from(system, omega, d_prime), indent=2,
                      sort_keys=True) + "\n"
