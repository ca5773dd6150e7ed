"""Dense bit-packed linear algebra over GF(2).

Vectors and matrix rows are stored as Python integers, with bit ``j``
holding coordinate ``j``.  Big-int XOR/AND/popcount run word-at-a-time in
C, so the row-operation-heavy routines here (elimination, products, span
tracking) need no compiled extension to be fast at n up to a few thousand.

All public operations return new values; a constructed :class:`BitVector`
or :class:`BitMatrix` is never mutated.  Shape mismatches raise
:class:`~qldpc_sampler.errors.DimensionError`.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass

from .errors import DimensionError

__all__ = [
    "BitVector",
    "BitMatrix",
    "Permutation",
    "RrefResult",
    "RowSpan",
    "rref",
    "rank",
    "kernel_basis",
    "is_in_span",
]


class BitVector:
    """An immutable binary vector of fixed length."""

    __slots__ = ("length", "bits")

    def __init__(self, length: int, bits: int = 0):
        if length < 0:
            raise DimensionError("vector length must be non-negative")
        if bits < 0 or bits >> length:
            raise ValueError("bits outside the declared length")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BitVector is immutable")

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    @classmethod
    def from_support(cls, length: int, support) -> "BitVector":
        bits = 0
        for j in support:
            if not 0 <= j < length:
                raise DimensionError(f"coordinate {j} outside [0, {length})")
            bits |= 1 << j
        return cls(length, bits)

    @classmethod
    def from_bits(cls, values) -> "BitVector":
        values = list(values)
        bits = 0
        for j, b in enumerate(values):
            if b & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    @classmethod
    def from01(cls, text: str) -> "BitVector":
        """Parse a string of '0'/'1' characters; leftmost char is coordinate 0."""
        if set(text) - {"0", "1"}:
            raise ValueError("expected only '0' and '1' characters")
        return cls.from_bits(int(c) for c in text)

    def weight(self) -> int:
        """Hamming weight (number of set coordinates)."""
        return self.bits.bit_count()

    def support(self) -> tuple:
        """Indices of set coordinates, ascending."""
        out = []
        x = self.bits
        while x:
            low = x & -x
            out.append(low.bit_length() - 1)
            x ^= low
        return tuple(out)

    def dot(self, other: "BitVector") -> int:
        """Inner product over GF(2)."""
        if self.length != other.length:
            raise DimensionError(f"dot of lengths {self.length} and {other.length}")
        return (self.bits & other.bits).bit_count() & 1

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.length + other.length, self.bits | (other.bits << self.length))

    def split(self, at: int) -> tuple:
        """Split into (first ``at`` coordinates, remaining coordinates)."""
        if not 0 <= at <= self.length:
            raise DimensionError(f"split point {at} outside [0, {self.length}]")
        return (
            BitVector(at, self.bits & ((1 << at) - 1)),
            BitVector(self.length - at, self.bits >> at),
        )

    def to01(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.length))

    def to_list(self) -> list:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise DimensionError(f"xor of lengths {self.length} and {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.length == other.length
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.length, self.bits))

    def __repr__(self) -> str:
        return f"BitVector({self.to01()!r})"


class BitMatrix:
    """An immutable binary matrix stored as one packed integer per row."""

    __slots__ = ("rows", "cols", "row_bits")

    def __init__(self, cols: int, row_bits=()):
        if cols < 0:
            raise DimensionError("column count must be non-negative")
        row_bits = tuple(row_bits)
        for bits in row_bits:
            if bits < 0 or bits >> cols:
                raise ValueError("row bits outside the declared width")
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "rows", len(row_bits))
        object.__setattr__(self, "row_bits", row_bits)

    def __setattr__(self, name, value):
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(cols, [0] * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, vectors, cols=None) -> "BitMatrix":
        vectors = list(vectors)
        if cols is None:
            if not vectors:
                raise DimensionError("cols is required for an empty matrix")
            cols = vectors[0].length
        for v in vectors:
            if v.length != cols:
                raise DimensionError("rows of differing lengths")
        return cls(cols, [v.bits for v in vectors])

    @classmethod
    def from_lists(cls, rows) -> "BitMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise DimensionError("cols is required for an empty matrix")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionError("rows of differing lengths")
        return cls(cols, [sum((b & 1) << j for j, b in enumerate(r)) for r in rows])

    @classmethod
    def from01_lines(cls, lines) -> "BitMatrix":
        return cls.from_rows([BitVector.from01(line) for line in lines])

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_bits[i])

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        bits = 0
        for i, rb in enumerate(self.row_bits):
            if (rb >> j) & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, rb in enumerate(self.row_bits):
            x = rb
            while x:
                low = x & -x
                out[low.bit_length() - 1] |= 1 << i
                x ^= low
        return BitMatrix(self.rows, out)

    def mat_vec(self, v: BitVector) -> BitVector:
        if v.length != self.cols:
            raise DimensionError(f"matrix with {self.cols} cols times vector of length {v.length}")
        bits = 0
        vb = v.bits
        for i, rb in enumerate(self.row_bits):
            if (rb & vb).bit_count() & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def mat_mat(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"product of {self.shape} by {other.shape}")
        orows = other.row_bits
        out = []
        for rb in self.row_bits:
            acc = 0
            x = rb
            while x:
                low = x & -x
                acc ^= orows[low.bit_length() - 1]
                x ^= low
            out.append(acc)
        return BitMatrix(other.cols, out)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.mat_vec(other)
        if isinstance(other, BitMatrix):
            return self.mat_mat(other)
        return NotImplemented

    def with_row_xored(self, target: int, source: int) -> "BitMatrix":
        """New matrix with row ``source`` XORed into row ``target``."""
        rows = list(self.row_bits)
        rows[target] ^= rows[source]
        return BitMatrix(self.cols, rows)

    def with_rows_swapped(self, i: int, j: int) -> "BitMatrix":
        rows = list(self.row_bits)
        rows[i], rows[j] = rows[j], rows[i]
        return BitMatrix(self.cols, rows)

    def select_rows(self, indices) -> "BitMatrix":
        return BitMatrix(self.cols, [self.row_bits[i] for i in indices])

    def select_columns(self, indices) -> "BitMatrix":
        indices = list(indices)
        for j in indices:
            if not 0 <= j < self.cols:
                raise DimensionError(f"column {j} outside [0, {self.cols})")
        out = []
        for rb in self.row_bits:
            bits = 0
            for t, j in enumerate(indices):
                if (rb >> j) & 1:
                    bits |= 1 << t
            out.append(bits)
        return BitMatrix(len(indices), out)

    def stacked(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise DimensionError(f"stack of widths {self.cols} and {other.cols}")
        return BitMatrix(self.cols, self.row_bits + other.row_bits)

    def appended(self, v: BitVector) -> "BitMatrix":
        if v.length != self.cols:
            raise DimensionError(f"append of length {v.length} to width {self.cols}")
        return BitMatrix(self.cols, self.row_bits + (v.bits,))

    def permute_columns(self, perm: "Permutation") -> "BitMatrix":
        """New matrix whose column ``perm.images[j]`` is this matrix's column ``j``."""
        if perm.size != self.cols:
            raise DimensionError(f"permutation of size {perm.size} on width {self.cols}")
        images = perm.images
        out = []
        for rb in self.row_bits:
            bits = 0
            x = rb
            while x:
                low = x & -x
                bits |= 1 << images[low.bit_length() - 1]
                x ^= low
            out.append(bits)
        return BitMatrix(self.cols, out)

    def is_zero(self) -> bool:
        return not any(self.row_bits)

    def to_lists(self) -> list:
        return [self.row(i).to_list() for i in range(self.rows)]

    def to01_lines(self) -> list:
        return [self.row(i).to01() for i in range(self.rows)]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.cols == other.cols
            and self.row_bits == other.row_bits
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.row_bits))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., n-1}; position ``i`` maps to ``images[i]``."""

    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images is not a bijection on {0, ..., n-1}")

    @property
    def size(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Permutation":
        images = list(range(n))
        rng.shuffle(images)
        return cls(tuple(images))

    def apply(self, v: BitVector) -> BitVector:
        """Move coordinate ``i`` of ``v`` to coordinate ``images[i]``."""
        if v.length != self.size:
            raise DimensionError(f"permutation of size {self.size} on length {v.length}")
        bits = 0
        x = v.bits
        while x:
            low = x & -x
            bits |= 1 << self.images[low.bit_length() - 1]
            x ^= low
        return BitVector(v.length, bits)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __call__(self, i: int) -> int:
        return self.images[i]


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form together with its pivot columns."""

    matrix: BitMatrix
    pivot_columns: tuple
    rank: int


def _rref_bits(row_bits, cols):
    """RREF on raw packed rows. Returns (new row list, pivot column list).

    Pivot rule: for each row step, the leftmost column with a set entry at
    or below the current row.  Entries above pivots are eliminated too, so
    each pivot column ends with a single set entry.
    """
    rows = list(row_bits)
    m = len(rows)
    pivots = []
    cur = 0
    for col in range(cols):
        if cur >= m:
            break
        mask = 1 << col
        piv = -1
        for i in range(cur, m):
            if rows[i] & mask:
                piv = i
                break
        if piv < 0:
            continue
        rows[cur], rows[piv] = rows[piv], rows[cur]
        prow = rows[cur]
        for i in range(m):
            if i != cur and rows[i] & mask:
                rows[i] ^= prow
        pivots.append(col)
        cur += 1
    return rows, pivots


def rref(m: BitMatrix) -> RrefResult:
    """Reduced row echelon form of ``m`` (deterministic pivot choice)."""
    rows, pivots = _rref_bits(m.row_bits, m.cols)
    return RrefResult(BitMatrix(m.cols, rows), tuple(pivots), len(pivots))


def rank(m: BitMatrix) -> int:
    """GF(2) rank of ``m``."""
    _, pivots = _rref_bits(m.row_bits, m.cols)
    return len(pivots)


def _kernel_basis_bits(row_bits, cols):
    """Packed basis rows of the right kernel, one per free column."""
    reduced, pivots = _rref_bits(row_bits, cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = 1 << free
        fmask = 1 << free
        for i, pc in enumerate(pivots):
            if reduced[i] & fmask:
                v |= 1 << pc
        basis.append(v)
    return basis


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of {c : m @ c = 0}, one vector per row.

    The result has ``m.cols - rank(m)`` rows; an injective matrix yields an
    empty basis.
    """
    return BitMatrix(m.cols, _kernel_basis_bits(m.row_bits, m.cols))


class RowSpan:
    """Incrementally maintained row space, kept in reduced echelon form.

    Supports O(rows * words) membership tests and insertions, which is what
    the samplers need to reject candidate rows that are linear combinations
    of already accepted ones.
    """

    def __init__(self, cols: int):
        self.cols = cols
        self._pivots = []  # ascending pivot columns
        self._rows = []    # reduced rows, aligned with _pivots

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> "RowSpan":
        span = cls(m.cols)
        for bits in m.row_bits:
            span._add_bits(bits)
        return span

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce_bits(self, bits: int) -> int:
        for pc, row in zip(self._pivots, self._rows):
            if (bits >> pc) & 1:
                bits ^= row
        return bits

    def _add_bits(self, bits: int) -> bool:
        bits = self._reduce_bits(bits)
        if bits == 0:
            return False
        pc = (bits & -bits).bit_length() - 1
        mask = 1 << pc
        self._rows = [r ^ bits if r & mask else r for r in self._rows]
        at = bisect.bisect_left(self._pivots, pc)
        self._pivots.insert(at, pc)
        self._rows.insert(at, bits)
        return True

    def contains(self, v: BitVector) -> bool:
        if v.length != self.cols:
            raise DimensionError(f"span over {self.cols} cols queried with length {v.length}")
        return self._reduce_bits(v.bits) == 0

    def add(self, v: BitVector) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        if v.length != self.cols:
            raise DimensionError(f"span over {self.cols} cols extended with length {v.length}")
        return self._add_bits(v.bits)


def is_in_span(rows: BitMatrix, v: BitVector) -> bool:
    """Whether ``v`` is a linear combination of the rows of ``rows``."""
    if v.length != rows.cols:
        raise DimensionError(f"span of width {rows.cols} queried with length {v.length}")
    span = RowSpan.from_matrix(rows)
    return span.contains(v)
