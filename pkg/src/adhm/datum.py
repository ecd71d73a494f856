"""ADHM data of GL type and of orthogonal/symplectic type.

An :class:`AdhmDatum` is a quadruple (B1, B2, i, j) with B1, B2 in End(V),
i in Hom(W, V) and j in Hom(V, W), all stored in coordinates.  A
:class:`SoDatum` carries forms on V and W of opposite parity, self-adjoint
B1, B2, and derives j as the right adjoint of i.  With V symplectic and W
orthogonal it describes SO(N)-instantons; with V orthogonal and W symplectic
it describes USp-instantons.  Both flavours share one class because every
formula below is written in terms of the Gram matrices alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, InvariantViolation, NotStable
from .linalg import (Matrix, Subspace, charpoly, inverse, invariant_closure, is_invertible,
                     kernel_vectors, rational_roots, solve_linear)

SYMMETRIC = "symmetric"
ALTERNATING = "alternating"


@dataclass(frozen=True)
class BilinearForm:
    kind: str
    gram: Matrix

    def __post_init__(self):
        if self.kind not in (SYMMETRIC, ALTERNATING):
            raise ValueError(f"unknown form kind {self.kind!r}")
        G = self.gram
        if not G.is_square():
            raise DimensionMismatch("Gram matrix must be square")
        if self.kind == SYMMETRIC and G.T != G:
            raise InvariantViolation("symmetric form with non-symmetric Gram matrix")
        if self.kind == ALTERNATING and G.T != -G:
            raise InvariantViolation("alternating form with non-antisymmetric Gram matrix")
        if not is_invertible(G):
            raise InvariantViolation("degenerate bilinear form")

    @property
    def dim(self) -> int:
        return self.gram.rows

    @property
    def sign(self) -> int:
        """+1 for symmetric, -1 for alternating: (v, w) = sign * (w, v)."""
        return 1 if self.kind == SYMMETRIC else -1

    @property
    def inverse_gram(self) -> Matrix:
        return inverse(self.gram)

    def pair(self, u: Sequence, v: Sequence):
        G = self.gram.data
        acc = Fraction(0)
        for a, ua in enumerate(u):
            if ua:
                row = G[a]
                for b, vb in enumerate(v):
                    if vb and row[b]:
                        acc = acc + ua * row[b] * vb
        return acc

    def restrict(self, basis: Matrix) -> "BilinearForm":
        """The form on the span of the columns of ``basis``."""
        return BilinearForm(self.kind, basis.T @ self.gram @ basis)

    def transform(self, P: Matrix) -> "BilinearForm":
        """Gram matrix in the basis given by the columns of P."""
        return self.restrict(P)

    def to_json(self) -> dict:
        return {"kind": self.kind, "gram": self.gram.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "BilinearForm":
        return cls(obj["kind"], Matrix.from_json(obj["gram"]))


def standard_symplectic(n: int) -> BilinearForm:
    """J = [[0, I], [-I, 0]] on a space of even dimension n."""
    if n % 2:
        raise DimensionMismatch("symplectic space must have even dimension")
    h = n // 2
    I = Matrix.identity(h)
    Z = Matrix.zeros(h, h)
    return BilinearForm(ALTERNATING, Matrix.block([[Z, I], [-I, Z]]))


def standard_orthogonal(n: int) -> BilinearForm:
    return BilinearForm(SYMMETRIC, Matrix.identity(n))


def hyperbolic_plus_unit() -> BilinearForm:
    """Orthogonal form on C^3 with (e1, e2) = 1, (e1, e1) = (e2, e2) = 0, (e3, e3) = 1."""
    return BilinearForm(SYMMETRIC, Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))


def form_direct_sum(forms: Sequence[BilinearForm]) -> BilinearForm:
    kinds = {f.kind for f in forms}
    if len(kinds) != 1:
        raise InvariantViolation("direct sum of forms of different kinds")
    return BilinearForm(kinds.pop(), Matrix.block_diag([f.gram for f in forms]))


def adjoint_endo(B: Matrix, form: BilinearForm) -> Matrix:
    """Right adjoint B* with (Bv, w) = (v, B*w)."""
    if B.shape != form.gram.shape:
        raise DimensionMismatch("endomorphism and form live on different spaces")
    return form.inverse_gram @ B.T @ form.gram


def adjoint_hom(i: Matrix, formW: BilinearForm, formV: BilinearForm) -> Matrix:
    """Right adjoint i*: V -> W of i: W -> V, with (i(w), v)_V = (w, i*(v))_W."""
    if i.shape != (formV.dim, formW.dim):
        raise DimensionMismatch(f"map of shape {i.shape} between spaces of dims {formW.dim}->{formV.dim}")
    return formW.inverse_gram @ i.T @ formV.gram


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdhmDatum:
    B1: Matrix
    B2: Matrix
    i: Matrix
    j: Matrix

    def __post_init__(self):
        k, N = self.i.shape
        if self.B1.shape != (k, k) or self.B2.shape != (k, k):
            raise DimensionMismatch(f"B matrices must be {k}x{k}")
        if self.j.shape != (N, k):
            raise DimensionMismatch(f"j must be {N}x{k}, got {self.j.shape}")

    @property
    def dimV(self) -> int:
        return self.i.rows

    @property
    def dimW(self) -> int:
        return self.i.cols

    @classmethod
    def zero(cls, k: int, N: int) -> "AdhmDatum":
        return cls(Matrix.zeros(k, k), Matrix.zeros(k, k), Matrix.zeros(k, N), Matrix.zeros(N, k))

    def matrices(self) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        return (self.B1, self.B2, self.i, self.j)

    def map(self, f) -> "AdhmDatum":
        return AdhmDatum(*(m.map(f) for m in self.matrices()))


@dataclass(frozen=True)
class SoDatum:
    """(B1, B2, i) with B's self-adjoint for formV and j = i*.

    ``formV`` and ``formW`` must be of opposite kinds.  Invariants are checked
    on construction unless ``check=False``.
    """

    B1: Matrix
    B2: Matrix
    i: Matrix
    formV: BilinearForm
    formW: BilinearForm
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.formV.kind == self.formW.kind:
            raise InvariantViolation("forms on V and W must be of opposite kinds")
        k, N = self.i.shape
        if self.formV.dim != k or self.formW.dim != N:
            raise DimensionMismatch("forms do not match the shape of i")
        if self.B1.shape != (k, k) or self.B2.shape != (k, k):
            raise DimensionMismatch(f"B matrices must be {k}x{k}")
        if self.check:
            self.check_invariants()

    def check_invariants(self):
        for name, B in (("B1", self.B1), ("B2", self.B2)):
            if adjoint_endo(B, self.formV) != B:
                raise InvariantViolation(f"{name} is not self-adjoint")
        if self.formV.kind == ALTERNATING and self.dimV % 2:
            raise InvariantViolation("symplectic V must have even dimension")

    @property
    def dimV(self) -> int:
        return self.i.rows

    @property
    def dimW(self) -> int:
        return self.i.cols

    @property
    def j(self) -> Matrix:
        return adjoint_hom(self.i, self.formW, self.formV)

    @property
    def datum(self) -> AdhmDatum:
        return AdhmDatum(self.B1, self.B2, self.i, self.j)

    @classmethod
    def from_datum(cls, x: AdhmDatum, formV: BilinearForm, formW: BilinearForm) -> "SoDatum":
        y = cls(x.B1, x.B2, x.i, formV, formW)
        if y.j != x.j:
            raise InvariantViolation("j is not the adjoint of i")
        return y


def as_datum(x) -> AdhmDatum:
    return x.datum if isinstance(x, SoDatum) else x


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(self.parts)
        if any(a <= 0 or a % 2 for a in p):
            raise InvariantViolation("parts must be positive even integers")
        if list(p) != sorted(p, reverse=True):
            raise InvariantViolation("parts must be weakly decreasing")
        object.__setattr__(self, "parts", p)

    @property
    def size(self) -> int:
        return sum(self.parts)


# ---------------------------------------------------------------------------
# moment maps


def moment_map_gl(x) -> Matrix:
    x = as_datum(x)
    return x.B1.commutator(x.B2) + x.i @ x.j


def moment_map_sp(y: SoDatum) -> Matrix:
    """[B1, B2] + i i*, asserted anti-self-adjoint."""
    y.check_invariants()
    M = y.B1.commutator(y.B2) + y.i @ y.j
    if adjoint_endo(M, y.formV) != -M:
        raise InvariantViolation("moment map value is not anti-self-adjoint")
    return M


def lie_algebra_basis(form: BilinearForm) -> list[Matrix]:
    """Basis of {X : X* = -X}, the Lie algebra of the isometry group."""
    n = form.dim
    # X* = -X  <=>  X^T G + G X = 0
    G = form.gram
    rows = []
    for a in range(n):
        for b in range(n):
            coeffs = [Fraction(0)] * (n * n)
            for c in range(n):
                # (X^T G)_{ab} = sum_c X_{ca} G_{cb};  (G X)_{ab} = sum_c G_{ac} X_{cb}
                coeffs[c * n + a] += G[c, b]
                coeffs[c * n + b] += G[a, c]
            rows.append(coeffs)
    vecs = kernel_vectors(Matrix(rows, cols=n * n))
    return [Matrix([v[r * n:(r + 1) * n] for r in range(n)], cols=n) for v in vecs]


def pairing(M: Matrix, xi: Matrix):
    """Trace pairing <M, xi> = tr(xi M)."""
    return (xi @ M).trace()


def mu_cotangent(a: Matrix, b: Matrix) -> Matrix:
    """Moment map of T*V at (a, b), a a column of V and b a row of V^dual: the functional xi -> b(xi a)."""
    return a @ b


def mu_vector(v: Matrix, formV: BilinearForm) -> Matrix:
    """Moment map of V = Hom(C, V) for the symplectic form this space inherits.

    Hom(C, V) with the unit form on C carries omega(v, v') = 2 tr(v v'^*) =
    -2 (v, v')_V, so xi -> (1/2) omega(xi v, v) = (v, xi v)_V, the functional
    represented by v v^T G.
    """
    return v @ v.T @ formV.gram


def same_functional(M1: Matrix, M2: Matrix, form: BilinearForm) -> bool:
    """Do M1 and M2 define the same functional on the isometry Lie algebra of ``form``?"""
    D = M1 - M2
    return adjoint_endo(D, form) == D


# ---------------------------------------------------------------------------
# stability


def is_stable(x) -> bool:
    x = as_datum(x)
    k = x.dimV
    if k == 0:
        return True
    seed = Subspace.column_space(x.i)
    return invariant_closure(seed, [x.B1, x.B2]).dim == k


def dual(x) -> AdhmDatum:
    """(B1^T, B2^T, -j^T, i^T) on (V^dual, W^dual)."""
    x = as_datum(x)
    return AdhmDatum(x.B1.T, x.B2.T, -x.j.T, x.i.T)


def is_costable(x) -> bool:
    return is_stable(dual(x))


def is_regular(x) -> bool:
    return is_stable(x) and is_costable(x)


def require_stable(x):
    if not is_stable(x):
        raise NotStable("Im i does not generate V under B1, B2")


# ---------------------------------------------------------------------------
# group action and basic constructions


def act(g: Matrix, x, check_isometry: bool = False):
    """g . x = (g B1 g^-1, g B2 g^-1, g i, j g^-1)."""
    if not is_invertible(g):
        raise ZeroDivisionError("group element is singular")
    gi = inverse(g)
    if isinstance(x, SoDatum):
        if check_isometry and adjoint_endo(g, x.formV) @ g != Matrix.identity(g.rows):
            raise InvariantViolation("g does not preserve the form on V")
        formV = BilinearForm(x.formV.kind, gi.T @ x.formV.gram @ gi)
        return SoDatum(g @ x.B1 @ gi, g @ x.B2 @ gi, g @ x.i, formV, x.formW)
    if x.dimV != g.rows:
        raise DimensionMismatch("g does not act on V")
    return AdhmDatum(g @ x.B1 @ gi, g @ x.B2 @ gi, g @ x.i, x.j @ gi)


def change_basis(x, P: Matrix):
    """Express x in the basis of V given by the columns of P (acting by P^-1)."""
    return act(inverse(P), x)


def change_w_basis(x, Q: Matrix):
    """Express x in the basis of W given by the columns of Q."""
    Qi = inverse(Q)
    if isinstance(x, SoDatum):
        return SoDatum(x.B1, x.B2, x.i @ Q, x.formV, x.formW.transform(Q))
    return AdhmDatum(x.B1, x.B2, x.i @ Q, Qi @ x.j)


def translate_b1(x, t):
    x0 = as_datum(x)
    k = x0.dimV
    shift = Matrix.identity(k, zero=x0.B1.zero).scale(t)
    if isinstance(x, SoDatum):
        return SoDatum(x.B1 + shift, x.B2, x.i, x.formV, x.formW)
    return AdhmDatum(x0.B1 + shift, x0.B2, x0.i, x0.j)


def direct_sum(data: Sequence):
    if not data:
        raise ValueError("empty direct sum")
    if all(isinstance(d, SoDatum) for d in data):
        fw = data[0].formW
        if any(d.formW != fw for d in data):
            raise DimensionMismatch("summands must share the form on W")
        B1 = Matrix.block_diag([d.B1 for d in data])
        B2 = Matrix.block_diag([d.B2 for d in data])
        i = Matrix([r for d in data for r in d.i.data], cols=fw.dim)
        return SoDatum(B1, B2, i, form_direct_sum([d.formV for d in data]), fw)
    data = [as_datum(d) for d in data]
    N = data[0].dimW
    if any(d.dimW != N for d in data):
        raise DimensionMismatch("summands must share W")
    B1 = Matrix.block_diag([d.B1 for d in data])
    B2 = Matrix.block_diag([d.B2 for d in data])
    i = Matrix([r for d in data for r in d.i.data], cols=N)
    j = Matrix([sum((list(d.j.data[r]) for d in data), []) for r in range(N)], cols=B1.rows)
    return AdhmDatum(B1, B2, i, j)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[Fraction, ...]

    @property
    def distinct(self) -> bool:
        return len(set(self.eigenvalues)) == len(self.eigenvalues)


def b1_spectrum(x) -> Spectrum:
    """Rational eigenvalues of B1 with multiplicity; NotSplitOverBase otherwise."""
    x = as_datum(x)
    if x.dimV == 0:
        return Spectrum(())
    return Spectrum(tuple(rational_roots(charpoly(x.B1))))


def compatible_form(x: AdhmDatum, formW: BilinearForm, kind: str) -> BilinearForm | None:
    """A form G on V of the given kind with B1, B2 self-adjoint and j = i*.

    Solves the linear system B^T G = G B, G_W j = i^T G.  For a regular datum
    the solution is unique up to scale, and the scale is fixed by j = i*.
    Returns None when no nondegenerate solution exists.
    """
    k = x.dimV
    n2 = k * k
    eqs, rhs = [], []

    def idx(a, b):
        return a * k + b

    for B in (x.B1, x.B2):
        for a in range(k):
            for b in range(k):
                row = [Fraction(0)] * n2
                for c in range(k):
                    row[idx(c, b)] += B[c, a]   # (B^T G)_{ab}
                    row[idx(a, c)] -= B[c, b]   # (G B)_{ab}
                eqs.append(row)
                rhs.append(Fraction(0))
    Gj = formW.gram @ x.j
    for w in range(x.dimW):
        for b in range(k):
            row = [Fraction(0)] * n2
            for a in range(k):
                row[idx(a, b)] += x.i[a, w]     # (i^T G)_{wb}
            eqs.append(row)
            rhs.append(Gj[w, b])
    sgn = 1 if kind == SYMMETRIC else -1
    for a in range(k):
        for b in range(a, k):
            row = [Fraction(0)] * n2
            row[idx(a, b)] += 1
            row[idx(b, a)] -= sgn
            if any(row):
                eqs.append(row)
                rhs.append(Fraction(0))
    sol = solve_linear(Matrix(eqs, cols=n2), Matrix.column(rhs))
    if sol is None:
        return None
    G = Matrix([[sol[idx(a, b), 0] for b in range(k)] for a in range(k)], cols=k)
    if not is_invertible(G):
        return None
    return BilinearForm(kind, G)
