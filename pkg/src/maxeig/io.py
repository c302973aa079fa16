"""Matrix files: header-less CSV or JSON ``{"n": ..., "rows": [...]}``."""

from __future__ import annotations

import hashlib
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .core import as_matrix
from .errors import ParseError

__all__ = ["MatrixFile", "parse_matrix", "read_matrix", "matrix_to_json", "write_matrix_json"]


@dataclass(frozen=True)
class MatrixFile:
    path: str
    format: str
    parsed: np.ndarray
    digest: str


def _check_number(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {v!r}")
    v = float(v)
    if math.isnan(v) or math.isinf(v):
        raise ParseError(f"{where}: entry must be finite, got {v}")
    if v < 0:
        raise ParseError(f"{where}: entry must be nonnegative, got {v}")
    return v


def _parse_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
        raise ParseError('JSON matrix must be an object with fields "n" and "rows"')
    n, rows = obj["n"], obj["rows"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f'"rows" must be a list of {n} rows')
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i + 1}: expected {n} entries")
        out.append([_check_number(v, f"row {i + 1}, column {j + 1}") for j, v in enumerate(row)])
    return out


def _parse_csv(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix file")
    n = len(lines)
    out = []
    for i, ln in enumerate(lines):
        cells = [c.strip() for c in ln.split(",")]
        if len(cells) != n:
            raise ParseError(f"row {i + 1}: expected {n} comma-separated entries, got {len(cells)}")
        row = []
        for j, c in enumerate(cells):
            try:
                v = float(c)
            except ValueError:
                raise ParseError(f"row {i + 1}, column {j + 1}: not a number: {c!r}") from None
            row.append(_check_number(v, f"row {i + 1}, column {j + 1}"))
        out.append(row)
    return out


def parse_matrix(text):
    """Parse CSV or JSON text; JSON when the first non-blank character is ``{``.

    Returns ``(matrix, format)``.
    """
    stripped = text.lstrip()
    fmt = "json" if stripped.startswith("{") else "csv"
    rows = _parse_json(stripped) if fmt == "json" else _parse_csv(stripped)
    return as_matrix(rows), fmt


def read_matrix(path):
    """Read a matrix file, or standard input when ``path`` is ``-``."""
    if path == "-":
        raw = sys.stdin.buffer.read()
    else:
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 text") from exc
    A, fmt = parse_matrix(text)
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    return MatrixFile(path=path, format=fmt, parsed=A, digest=digest)


def matrix_to_json(A):
    """JSON text for ``A``; floats are written with ``repr`` so they round-trip exactly."""
    A = as_matrix(A)
    return json.dumps({"n": int(A.shape[0]), "rows": A.tolist()})


def write_matrix_json(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(matrix_to_json(A))
        fh.write("\n")
