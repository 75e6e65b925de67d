"""Exact linear algebra over the two-element field.

Vectors and matrix rows are bit-packed into Python integers: bit ``j`` of a
row is the entry in column ``j``.  XOR of two rows is then a single C-level
loop over machine words, which is what every elimination below spends its
time on.

All reductions use the least-index pivot, so results never depend on
iteration order or hashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bits_of(support: Iterable[int]) -> int:
    """Pack an iterable of indices (duplicates cancel) into an int."""
    out = 0
    for i in support:
        out ^= 1 << i
    return out


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class F2Vector:
    """A vector in F2^length, stored as a bitmask."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"support out of range for length {self.length}")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "F2Vector":
        support = list(support)
        if len(set(support)) != len(support):
            raise ValueError("support indices must be unique")
        return cls(length, bits_of(support))

    @classmethod
    def zeros(cls, length: int) -> "F2Vector":
        return cls(length, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return F2Vector(self.length, self.bits ^ other.bits)

    __sub__ = __add__

    def __iter__(self):
        return (self[i] for i in range(self.length))

    def to_list(self) -> list[int]:
        return list(self)


@dataclass(frozen=True)
class F2Matrix:
    """A rows x cols matrix over F2 with bit-packed rows.

    Build from sparse triplets with :meth:`from_entries` or from column
    bitmasks with :meth:`from_columns`; both produce the same canonical
    row-packed form.
    """

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_bits) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValueError("entry out of range")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "F2Matrix":
        """Positions listed an even number of times cancel."""
        rb = [0] * rows
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) out of range")
            rb[r] ^= 1 << c
        return cls(rows, cols, tuple(rb))

    @classmethod
    def from_dense(cls, array: Sequence[Sequence[int]]) -> "F2Matrix":
        rows = len(array)
        cols = len(array[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((i, j) for i, row in enumerate(array) for j, v in enumerate(row) if v % 2)
        )

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[int]) -> "F2Matrix":
        """Columns given as bitmasks over row indices."""
        rb = [0] * rows
        for j, col in enumerate(columns):
            if col >> rows:
                raise ValueError("column entry out of range")
            for i in iter_bits(col):
                rb[i] |= 1 << j
        return cls(rows, len(columns), tuple(rb))

    def columns(self) -> list[int]:
        cb = [0] * self.cols
        for i, row in enumerate(self.row_bits):
            for j in iter_bits(row):
                cb[j] |= 1 << i
        return cb

    @property
    def entries(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, row in enumerate(self.row_bits) for j in iter_bits(row))

    @property
    def nnz(self) -> int:
        return sum(popcount(r) for r in self.row_bits)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.row_bits]

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, tuple(self.columns()))

    def is_zero(self) -> bool:
        return not any(self.row_bits)

    def apply_bits(self, x: int) -> int:
        """Matrix times the column vector with bitmask ``x``."""
        out = 0
        for i, row in enumerate(self.row_bits):
            if popcount(row & x) & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other):
        if isinstance(other, F2Vector):
            if other.length != self.cols:
                raise ValueError("dimension mismatch")
            return F2Vector(self.rows, self.apply_bits(other.bits))
        if isinstance(other, F2Matrix):
            if other.rows != self.cols:
                raise ValueError("dimension mismatch")
            ob = other.row_bits
            out = []
            for row in self.row_bits:
                acc = 0
                for k in iter_bits(row):
                    acc ^= ob[k]
                out.append(acc)
            return F2Matrix(self.rows, other.cols, tuple(out))
        return NotImplemented

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.row_bits, other.row_bits)))


class Echelon:
    """Incrementally maintained echelon basis of a subspace of F2^n.

    Each stored vector has a distinct pivot (its lowest set bit) and carries
    a tag: the bitmask of inserted-vector indices whose sum it equals.
    """

    __slots__ = ("pivots", "count")

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, v: int) -> bool:
        """Insert the next vector; returns True if it enlarged the span."""
        idx = self.count
        self.count += 1
        r, tag = self.residual(v, 1 << idx)
        if r:
            self.pivots[(r & -r).bit_length() - 1] = (r, tag)
            return True
        return False

    def residual(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Residual of ``v`` after eliminating every pivot position."""
        pivots = self.pivots
        res = 0
        while v:
            low = v & -v
            hit = pivots.get(low.bit_length() - 1)
            if hit is None:
                res |= low
                v ^= low
            else:
                v ^= hit[0]
                tag ^= hit[1]
        return res, tag

    def contains(self, v: int) -> bool:
        return self.residual(v)[0] == 0

    def express(self, v: int) -> int | None:
        """Bitmask of inserted vectors summing to ``v``, or None."""
        r, tag = self.residual(v)
        return None if r else tag


def _column_echelon(m: F2Matrix) -> tuple[Echelon, list[int]]:
    """Echelon of the columns in index order, plus the kernel tags."""
    ech = Echelon()
    kernel = []
    for j, col in enumerate(m.columns()):
        r, tag = ech.residual(col, 1 << j)
        ech.count += 1
        if r:
            ech.pivots[(r & -r).bit_length() - 1] = (r, tag)
        else:
            kernel.append(tag)
    return ech, kernel


def rank(m: F2Matrix) -> int:
    vecs = m.row_bits if m.rows <= m.cols else m.columns()
    ech = Echelon()
    for v in vecs:
        r, _ = ech.residual(v)
        if r:
            ech.pivots[(r & -r).bit_length() - 1] = (r, 0)
    return ech.rank


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Basis of {x : Mx = 0}: one vector per column dependent on earlier ones."""
    _, kernel = _column_echelon(m)
    return [F2Vector(m.cols, k) for k in kernel]


def solve(m: F2Matrix, b: F2Vector) -> F2Vector | None:
    """Some x with Mx = b, or None.

    The returned x is supported on the pivot columns of the reduced row
    echelon form (the columns independent of all earlier columns), which
    makes it unique.
    """
    if b.length != m.rows:
        raise ValueError("right-hand side length must equal row count")
    ech, _ = _column_echelon(m)
    tag = ech.express(b.bits)
    return None if tag is None else F2Vector(m.cols, tag)


def in_image(m: F2Matrix, b: F2Vector) -> bool:
    return solve(m, b) is not None


def span_rank(vectors: Iterable[int]) -> int:
    ech = Echelon()
    for v in vectors:
        r, _ = ech.residual(v)
        if r:
            ech.pivots[(r & -r).bit_length() - 1] = (r, 0)
    return ech.rank
