"""Post-processing and serialization for check matrices.

Pruning removes "unlucky" columns (too few set entries to be useful in a
check matrix).  Deleting an all-zero column never changes any row inner
product.  For columns with some support, the rows touching them are dropped
first and the columns then removed, which restricts every surviving inner
product to a submatrix of an originally orthogonal pair and therefore
preserves self-orthogonality.

Three interchange formats are supported, all byte-exact on round-trip:

* ``alist``      - the common LDPC adjacency format: a header line ``n m``,
                   the max column/row degrees, per-column degree list,
                   per-row degree list, then per-column and per-row 1-based
                   support lists, each padded with 0 to the max degree.
* ``dense-text`` - r lines of n characters '0'/'1'.
* ``json-bundle``- dense-text rows plus a free-form metadata object.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DegeneratePruneError, ParameterError, ParseError
from .gf2 import BitMatrix

__all__ = [
    "PruneReport",
    "MatrixBundle",
    "FORMATS",
    "prune_zero_columns",
    "prune_low_weight_columns",
    "column_weight_histogram",
    "row_weight_histogram",
    "save_bundle",
    "load_bundle",
    "bundle_to_text",
    "bundle_from_text",
]

FORMATS = ("alist", "dense-text", "json-bundle")


def column_weight_histogram(h: BitMatrix) -> list:
    """Count of columns per weight; index z holds the number of weight-z
    columns, entries sum to h.cols."""
    hist = [0] * (h.rows + 1)
    for j in range(h.cols):
        w = sum((rb >> j) & 1 for rb in h.row_bits)
        hist[w] += 1
    return hist


def row_weight_histogram(h: BitMatrix) -> list:
    """Count of rows per weight; entries sum to h.rows."""
    hist = [0] * (h.cols + 1)
    for rb in h.row_bits:
        hist[rb.bit_count()] += 1
    return hist


@dataclass(frozen=True)
class PruneReport:
    """What a pruning pass removed and how the shape changed."""

    removed_columns: tuple
    removed_rows: tuple
    shape_before: tuple
    shape_after: tuple
    column_histogram_before: tuple
    column_histogram_after: tuple


def _prune(h: BitMatrix, removed_cols, removed_rows):
    keep_rows = [i for i in range(h.rows) if i not in removed_rows]
    keep_cols = [j for j in range(h.cols) if j not in removed_cols]
    pruned = h.select_rows(keep_rows).select_columns(keep_cols)
    return pruned, PruneReport(
        removed_columns=tuple(sorted(removed_cols)),
        removed_rows=tuple(sorted(removed_rows)),
        shape_before=h.shape,
        shape_after=pruned.shape,
        column_histogram_before=tuple(column_weight_histogram(h)),
        column_histogram_after=tuple(column_weight_histogram(pruned)),
    )


def prune_zero_columns(h: BitMatrix):
    """Drop all-zero columns.  Row count is unchanged and no inner product
    can change, so self-orthogonality is preserved."""
    used = 0
    for rb in h.row_bits:
        used |= rb
    zero_cols = {j for j in range(h.cols) if not (used >> j) & 1}
    return _prune(h, zero_cols, set())


def prune_low_weight_columns(h: BitMatrix, z_max: int, columns=None, iterate: bool = False):
    """Drop low-weight columns together with every row that touches them.

    The removal set defaults to all columns of weight <= ``z_max`` but can
    be restricted via ``columns`` (which must itself contain only columns
    of weight <= ``z_max``).  Rows with any support on the removal set are
    deleted, then the columns are, so the surviving submatrix keeps
    self-orthogonality.  Dropping rows can expose new low-weight columns; a
    single pass leaves those alone unless ``iterate`` asks for a fixpoint.

    Raises :class:`DegeneratePruneError` when no row would survive.
    """
    if z_max < 0:
        raise ParameterError(f"need z_max >= 0, got {z_max}")

    def weight_of(m, j):
        return sum((rb >> j) & 1 for rb in m.row_bits)

    if columns is not None:
        columns = set(columns)
        for j in columns:
            if not 0 <= j < h.cols:
                raise ParameterError(f"column {j} outside [0, {h.cols})")
            if weight_of(h, j) > z_max:
                raise ParameterError(f"column {j} has weight above z_max={z_max}")

    current = h
    removed_cols_orig = set()
    removed_rows_orig = set()
    col_map = list(range(h.cols))
    row_map = list(range(h.rows))
    while True:
        if columns is not None and current is h:
            drop_cols = set(columns)
        else:
            drop_cols = {j for j in range(current.cols) if weight_of(current, j) <= z_max}
        if not drop_cols:
            break
        drop_rows = {
            i
            for i, rb in enumerate(current.row_bits)
            if any((rb >> j) & 1 for j in drop_cols)
        }
        if len(drop_rows) == current.rows and current.rows > 0:
            raise DegeneratePruneError(
                "pruning would delete every row; lower z_max or restrict the column set"
            )
        removed_cols_orig.update(col_map[j] for j in drop_cols)
        removed_rows_orig.update(row_map[i] for i in drop_rows)
        keep_rows = [i for i in range(current.rows) if i not in drop_rows]
        keep_cols = [j for j in range(current.cols) if j not in drop_cols]
        current = current.select_rows(keep_rows).select_columns(keep_cols)
        col_map = [col_map[j] for j in keep_cols]
        row_map = [row_map[i] for i in keep_rows]
        if not iterate:
            break

    return current, PruneReport(
        removed_columns=tuple(sorted(removed_cols_orig)),
        removed_rows=tuple(sorted(removed_rows_orig)),
        shape_before=h.shape,
        shape_after=current.shape,
        column_histogram_before=tuple(column_weight_histogram(h)),
        column_histogram_after=tuple(column_weight_histogram(current)),
    )


@dataclass(frozen=True)
class MatrixBundle:
    """A matrix plus generation metadata that travels with it."""

    matrix: BitMatrix
    metadata: dict = field(default_factory=dict)


def _to_alist(m: BitMatrix) -> str:
    cols = [m.column(j).support() for j in range(m.cols)]
    rows = [m.row(i).support() for i in range(m.rows)]
    max_col = max((len(c) for c in cols), default=0)
    max_row = max((len(r) for r in rows), default=0)
    lines = [
        f"{m.cols} {m.rows}",
        f"{max_col} {max_row}",
        " ".join(str(len(c)) for c in cols),
        " ".join(str(len(r)) for r in rows),
    ]
    for supp in cols:
        padded = [str(i + 1) for i in supp] + ["0"] * (max_col - len(supp))
        lines.append(" ".join(padded))
    for supp in rows:
        padded = [str(j + 1) for j in supp] + ["0"] * (max_row - len(supp))
        lines.append(" ".join(padded))
    return "\n".join(lines) + "\n"


def _ints(line: str, lineno: int) -> list:
    out = []
    for col, tok in enumerate(line.split()):
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", line=lineno, column=col + 1)
    return out


def _from_alist(text: str) -> BitMatrix:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file: missing header", line=1)
    header = _ints(lines[0], 1)
    if len(header) != 2:
        raise ParseError("header must hold exactly 'n m'", line=1)
    n, m = header
    if n < 0 or m < 0:
        raise ParseError("negative dimensions in header", line=1)
    if len(lines) < 2:
        raise ParseError("missing max-degree line", line=2)
    if len(lines) < 4:
        raise ParseError("missing degree list section", line=len(lines) + 1)
    col_deg = _ints(lines[2], 3)
    row_deg = _ints(lines[3], 4)
    if len(col_deg) != n:
        raise ParseError(f"expected {n} column degrees, got {len(col_deg)}", line=3)
    if len(row_deg) != m:
        raise ParseError(f"expected {m} row degrees, got {len(row_deg)}", line=4)
    if len(lines) < 4 + n:
        raise ParseError("missing per-column support section", line=len(lines) + 1)
    if len(lines) < 4 + n + m:
        raise ParseError("missing per-row support section", line=len(lines) + 1)

    row_bits = [0] * m
    for j in range(n):
        lineno = 5 + j
        entries = [x for x in _ints(lines[4 + j], lineno) if x != 0]
        if len(entries) != col_deg[j]:
            raise ParseError(
                f"column {j} lists {len(entries)} entries but declares degree {col_deg[j]}",
                line=lineno,
            )
        for i in entries:
            if not 1 <= i <= m:
                raise ParseError(f"row index {i} outside [1, {m}]", line=lineno)
            row_bits[i - 1] |= 1 << j
    matrix = BitMatrix(n, row_bits)
    for i in range(m):
        lineno = 5 + n + i
        entries = [x for x in _ints(lines[4 + n + i], lineno) if x != 0]
        if len(entries) != row_deg[i]:
            raise ParseError(
                f"row {i} lists {len(entries)} entries but declares degree {row_deg[i]}",
                line=lineno,
            )
        bits = 0
        for j in entries:
            if not 1 <= j <= n:
                raise ParseError(f"column index {j} outside [1, {n}]", line=lineno)
            bits |= 1 << (j - 1)
        if bits != row_bits[i]:
            raise ParseError(f"row {i} support disagrees with the column section", line=lineno)
    return matrix


def _to_dense(m: BitMatrix) -> str:
    return "\n".join(m.to01_lines()) + "\n"


def _from_dense(text: str) -> BitMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty file: no matrix rows", line=1)
    width = len(lines[0])
    bits = []
    for i, ln in enumerate(lines):
        if len(ln) != width:
            raise ParseError(f"row of width {len(ln)}, expected {width}", line=i + 1)
        for col, ch in enumerate(ln):
            if ch not in "01":
                raise ParseError(f"unexpected character {ch!r}", line=i + 1, column=col + 1)
        bits.append(int(ln[::-1], 2))
    return BitMatrix(width, bits)


def bundle_to_text(bundle: MatrixBundle, fmt: str) -> str:
    """Serialize to one of FORMATS.  Only json-bundle keeps the metadata."""
    if fmt == "alist":
        return _to_alist(bundle.matrix)
    if fmt == "dense-text":
        return _to_dense(bundle.matrix)
    if fmt == "json-bundle":
        payload = {
            "format": "json-bundle",
            "rows": bundle.matrix.to01_lines(),
            "cols": bundle.matrix.cols,
            "metadata": bundle.metadata,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    raise ParameterError(f"unknown format {fmt!r}; choose from {FORMATS}")


def bundle_from_text(text: str, fmt: str) -> MatrixBundle:
    if fmt == "alist":
        return MatrixBundle(_from_alist(text))
    if fmt == "dense-text":
        return MatrixBundle(_from_dense(text))
    if fmt == "json-bundle":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
        for key in ("rows", "cols", "metadata"):
            if key not in payload:
                raise ParseError(f"missing {key!r} section", line=1)
        rows = payload["rows"]
        cols = payload["cols"]
        if rows and any(len(r) != cols for r in rows):
            raise ParseError("row width disagrees with declared cols", line=1)
        matrix = BitMatrix.from01_lines(rows) if rows else BitMatrix(cols, [])
        return MatrixBundle(matrix, dict(payload["metadata"]))
    raise ParameterError(f"unknown format {fmt!r}; choose from {FORMATS}")


_EXTENSIONS = {".alist": "alist", ".txt": "dense-text", ".json": "json-bundle"}


def detect_format(path) -> str:
    """Guess a format from the file extension; default to dense-text."""
    return _EXTENSIONS.get(Path(path).suffix.lower(), "dense-text")


def save_bundle(bundle: MatrixBundle, path, fmt=None) -> None:
    path = Path(path)
    fmt = fmt or detect_format(path)
    path.write_text(bundle_to_text(bundle, fmt), encoding="utf-8")


def load_bundle(path, fmt=None) -> MatrixBundle:
    path = Path(path)
    fmt = fmt or detect_format(path)
    return bundle_from_text(path.read_text(encoding="utf-8"), fmt)
