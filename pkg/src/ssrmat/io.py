"""Matrix documents on disk: plain CSV of exact rationals, or structured JSON.

CSV is one row per line, entries comma-separated, each entry a canonical
rational string matching ``-?[0-9]+(/[1-9][0-9]*)?``.  JSON wraps the same
entry strings in {"rows", "cols", "entries", "metadata"}.  Writing then
reading either form reproduces the matrix bit for bit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .construct import ConstructionTrace
from .errors import SsrError
from .matrix import Mat

ENTRY_RE = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")


@dataclass
class MatrixDocument:
    matrix: Mat
    metadata: dict[str, Any] = field(default_factory=dict)


def parse_entry(text: str) -> Fraction:
    cell = text.strip()
    if not ENTRY_RE.fullmatch(cell):
        raise SsrError(f"not a canonical rational: {text!r}")
    return Fraction(cell)


def format_entry(x: Fraction) -> str:
    return str(x)


def parse_csv(text: str) -> MatrixDocument:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise SsrError("empty CSV document")
    rows = [[parse_entry(cell) for cell in line.split(",")] for line in lines]
    return MatrixDocument(Mat(rows))


def dump_csv(doc: MatrixDocument) -> str:
    return (
        "\n".join(",".join(format_entry(x) for x in row) for row in doc.matrix) + "\n"
    )


def parse_json(text: str) -> MatrixDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SsrError(f"invalid JSON document: {exc}") from None
    if not isinstance(data, dict):
        raise SsrError("JSON document must be an object")
    for key in ("rows", "cols", "entries"):
        if key not in data:
            raise SsrError(f"JSON document is missing {key!r}")
    entries = data["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise SsrError("entries must be a list of rows")
    rows = [[parse_entry(str(cell)) for cell in row] for row in entries]
    matrix = Mat(rows)
    if matrix.rows != data["rows"] or matrix.cols != data["cols"]:
        raise SsrError(
            f"declared shape {data['rows']}×{data['cols']} does not match "
            f"entries {matrix.rows}×{matrix.cols}"
        )
    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        raise SsrError("metadata must be an object")
    return MatrixDocument(matrix, metadata)


def dump_json(doc: MatrixDocument) -> str:
    payload = {
        "rows": doc.matrix.rows,
        "cols": doc.matrix.cols,
        "entries": [[format_entry(x) for x in row] for row in doc.matrix],
        "metadata": doc.metadata,
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_document(text: str) -> MatrixDocument:
    """Sniff the format: JSON documents start with '{', anything else is CSV."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(text)
    return parse_csv(text)


def dump_document(doc: MatrixDocument, fmt: str) -> str:
    if fmt == "csv":
        if doc.metadata:
            raise SsrError("CSV cannot carry metadata; use --format json")
        return dump_csv(doc)
    if fmt == "json":
        return dump_json(doc)
    raise SsrError(f"unknown format {fmt!r}")


def trace_as_metadata(trace: Optional[ConstructionTrace]) -> dict[str, Any]:
    if trace is None:
        return {}
    return {
        "column_coefficients": [
            [format_entry(y) for y in group] for group in trace.column_coefficients
        ],
        "perturbations": [
            {
                "row": p.row,
                "amount": format_entry(p.amount),
                "min_minor": format_entry(p.min_minor),
                "max_minor": format_entry(p.max_minor),
            }
            for p in trace.perturbations
        ],
        "pattern_extensions": list(trace.pattern_extensions),
        "trusted_input": trace.trusted_input,
    }
