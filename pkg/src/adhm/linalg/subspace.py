"""Linear subspaces in reduced row-echelon form."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionMismatch
from .matrix import Matrix, _one_of
from .solve import _rref_rows, kernel_vectors


class Subspace:
    """Subspace of K^n stored as the nonzero rows of its RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (), zero=Fraction(0)):
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if rows:
            zero = rows[0][0] - rows[0][0] if ambient_dim else zero
        rows, piv = _rref_rows(rows, ambient_dim, zero)
        self.ambient_dim = ambient_dim
        self.basis = Matrix(rows[:len(piv)], cols=ambient_dim, zero=zero)
        self.pivots = tuple(piv)

    @classmethod
    def zero_space(cls, n: int, zero=Fraction(0)) -> "Subspace":
        return cls(n, (), zero=zero)

    @classmethod
    def full(cls, n: int, zero=Fraction(0)) -> "Subspace":
        return cls(n, Matrix.identity(n, zero=zero).data, zero=zero)

    @classmethod
    def column_space(cls, M: Matrix) -> "Subspace":
        return cls(M.rows, M.columns(), zero=M.zero)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple]:
        return list(self.basis.data)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        w = list(v)
        for row, c in zip(self.basis.data, self.pivots):
            f = w[c]
            if f:
                w = [a - f * b if b else a for a, b in zip(w, row)]
        return not any(w)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis.data)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return Subspace(self.ambient_dim, self.vectors() + other.vectors(), zero=self.basis.zero)

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = sum a_k u_k = sum b_l w_l  <=> [U^T | -W^T] (a;b) = 0
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero_space(self.ambient_dim, zero=self.basis.zero)
        M = self.basis.T.hstack(-other.basis.T)
        vecs = []
        for sol in kernel_vectors(M):
            a = sol[:self.dim]
            vecs.append([sum((a[k] * self.basis.data[k][c] for k in range(self.dim)), self.basis.zero)
                         for c in range(self.ambient_dim)])
        return Subspace(self.ambient_dim, vecs, zero=self.basis.zero)

    def image(self, M: Matrix) -> "Subspace":
        if M.cols != self.ambient_dim:
            raise DimensionMismatch("operator does not act on this space")
        if self.dim == 0:
            return Subspace.zero_space(M.rows, zero=M.zero)
        return Subspace(M.rows, (M @ self.basis.T).columns(), zero=M.zero)

    def complement(self) -> "Subspace":
        """Coordinate complement spanned by the non-pivot unit vectors."""
        one = _one_of(self.basis.zero)
        piv = set(self.pivots)
        vecs = []
        for c in range(self.ambient_dim):
            if c not in piv:
                v = [self.basis.zero] * self.ambient_dim
                v[c] = one
                vecs.append(v)
        return Subspace(self.ambient_dim, vecs, zero=self.basis.zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis.data == other.basis.data

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.data))

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_space(self)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}


def kernel_basis(A: Matrix) -> Subspace:
    return Subspace(A.cols, kernel_vectors(A), zero=A.zero)


def invariant_closure(seed: Subspace, operators: Sequence[Matrix]) -> Subspace:
    """Smallest subspace containing ``seed`` and stable under every operator."""
    n = seed.ambient_dim
    for op in operators:
        if op.shape != (n, n):
            raise DimensionMismatch(f"operator of shape {op.shape} on a space of dimension {n}")
    current = seed
    queue = list(seed.vectors())
    while queue and current.dim < n:
        v = queue.pop()
        for op in operators:
            w = [sum((a * b for a, b in zip(row, v) if a and b), seed.basis.zero) for row in op.data]
            if not current.contains(w):
                current = Subspace(n, current.vectors() + [w], zero=seed.basis.zero)
                queue.append(w)
    return current
