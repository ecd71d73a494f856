"""Immutable dense matrices over any exact field.

Entries may be ``Fraction``, :class:`~adhm.linalg.scalars.Fp` or
:class:`~adhm.linalg.scalars.RatFunc`.  The additive zero of the field is
inferred from the entries (``Fraction(0)`` for empty matrices unless given).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .scalars import Fp, RatFunc, scalar_to_str


def _zero_of(x):
    return x - x


def _one_of(zero):
    if isinstance(zero, Fp):
        return Fp(1, zero.p)
    if isinstance(zero, RatFunc):
        return RatFunc.const(1)
    return Fraction(1)


def _lift(x):
    return Fraction(x) if isinstance(x, int) else x


class Matrix:
    __slots__ = ("data", "rows", "cols", "zero", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None, zero=None):
        rows = tuple(tuple(_lift(x) for x in r) for r in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        if zero is None:
            zero = _zero_of(rows[0][0]) if rows and cols else Fraction(0)
        self.data = rows
        self.rows = len(rows)
        self.cols = cols
        self.zero = zero
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, r: int, c: int, zero=Fraction(0)) -> "Matrix":
        return cls([[zero] * c for _ in range(r)], cols=c, zero=zero)

    @classmethod
    def identity(cls, n: int, zero=Fraction(0)) -> "Matrix":
        one = _one_of(zero)
        return cls([[one if a == b else zero for b in range(n)] for a in range(n)], cols=n, zero=zero)

    @classmethod
    def diag(cls, values: Sequence, zero=None) -> "Matrix":
        values = [_lift(v) for v in values]
        if zero is None:
            zero = _zero_of(values[0]) if values else Fraction(0)
        n = len(values)
        return cls([[values[a] if a == b else zero for b in range(n)] for a in range(n)], cols=n, zero=zero)

    @classmethod
    def column(cls, values: Sequence, zero=None) -> "Matrix":
        return cls([[v] for v in values], cols=1, zero=zero)

    @classmethod
    def from_rows(cls, vectors: Sequence[Sequence], cols: int, zero=Fraction(0)) -> "Matrix":
        return cls(vectors, cols=cols, zero=zero)

    @classmethod
    def from_columns(cls, vectors: Sequence[Sequence], rows: int, zero=Fraction(0)) -> "Matrix":
        return cls(vectors, cols=rows, zero=zero).T

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        out = []
        for brow in grid:
            h = brow[0].rows
            for r in range(h):
                line = []
                for blk in brow:
                    if blk.rows != h:
                        raise ValueError("block heights differ")
                    line.extend(blk.data[r])
                out.append(line)
        zero = grid[0][0].zero
        cols = sum(b.cols for b in grid[0])
        return cls(out, cols=cols, zero=zero)

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"], zero=None) -> "Matrix":
        if zero is None:
            zero = blocks[0].zero if blocks else Fraction(0)
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for r in range(b.rows):
                out[r0 + r][c0:c0 + b.cols] = b.data[r]
            r0 += b.rows
            c0 += b.cols
        return cls(out, cols=m, zero=zero)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("hstack row mismatch")
        return Matrix([a + b for a, b in zip(self.data, other.data)], cols=self.cols + other.cols, zero=self.zero)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("vstack column mismatch")
        return Matrix(self.data + other.data, cols=self.cols, zero=self.zero)

    # -- access ------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        r, c = key
        return self.data[r][c]

    def row(self, r: int) -> tuple:
        return self.data[r]

    def col(self, c: int) -> tuple:
        return tuple(row[c] for row in self.data)

    def columns(self) -> list[tuple]:
        return [self.col(c) for c in range(self.cols)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.data[r][c] for c in cols] for r in rows], cols=len(cols), zero=self.zero)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def flat(self) -> list:
        return [x for r in self.data for x in r]

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- algebra -----------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix([()] * self.cols, cols=0, zero=self.zero)
        return Matrix(zip(*self.data), cols=self.rows, zero=self.zero)

    def map(self, f: Callable, zero=None) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.data], cols=self.cols,
                      zero=self.zero if zero is None else zero)

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                      cols=self.cols, zero=self.zero)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                      cols=self.cols, zero=self.zero)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.data], cols=self.cols, zero=self.zero)

    def scale(self, c) -> "Matrix":
        return Matrix([[a * c for a in r] for r in self.data], cols=self.cols, zero=self.zero)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.zero
        ocols = other.cols
        odata = other.data
        out = []
        for r in self.data:
            acc = [zero] * ocols
            for k, a in enumerate(r):
                if not a:
                    continue
                ok = odata[k]
                for c in range(ocols):
                    b = ok[c]
                    if b:
                        acc[c] = acc[c] + a * b
            out.append(acc)
        return Matrix(out, cols=ocols, zero=zero)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row index a*other.rows + b."""
        zero = self.zero
        out = []
        for ra in self.data:
            for rb in other.data:
                line = []
                for a in ra:
                    if a:
                        line.extend(a * b if b else zero for b in rb)
                    else:
                        line.extend([zero] * other.cols)
                out.append(line)
        return Matrix(out, cols=self.cols * other.cols, zero=zero)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def trace(self):
        acc = self.zero
        for k in range(min(self.rows, self.cols)):
            acc = acc + self.data[k][k]
        return acc

    def __pow__(self, n: int) -> "Matrix":
        out = Matrix.identity(self.rows, zero=self.zero)
        for _ in range(n):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [scalar_to_str(x) for x in self.flat()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        r, c = int(obj["rows"]), int(obj["cols"])
        entries = [Fraction(str(e)) for e in obj["entries"]]
        if len(entries) != r * c:
            raise ValueError(f"expected {r * c} entries, got {len(entries)}")
        return cls([entries[k * c:(k + 1) * c] for k in range(r)], cols=c)


def qmat(rows: Sequence[Sequence]) -> Matrix:
    """Rational matrix from nested ints/strings/Fractions."""
    return Matrix([[Fraction(x) for x in r] for r in rows])


def vec(values: Sequence) -> Matrix:
    return Matrix.column([Fraction(v) for v in values])
