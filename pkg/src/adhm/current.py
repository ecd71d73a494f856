"""The truncated current algebra g_d = sl2 (x) C[z]/z^{d+1} acting on V_d = C^2 (x) C[z]/z^{d+1}.

Coordinates: a vector v in V_d is flattened as (v_0[0], v_0[1], v_1[0], ...),
i.e. index 2m + c.  A current matrix is flattened over the basis E z^m, F z^m,
H z^m as index 3m + (0, 1, 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Matrix, Subspace, kernel_basis, rank, solve_linear
from .linalg.matrix import _one_of, _zero_of

E = Matrix([[0, 1], [0, 0]])
F = Matrix([[0, 0], [1, 0]])
H = Matrix([[1, 0], [0, -1]])
SL2_BASIS = (E, F, H)


def _sp_pair(u: Sequence, w: Sequence):
    """Standard symplectic form on T: (e1, e2) = 1."""
    return u[0] * w[1] - u[1] * w[0]


@dataclass(frozen=True)
class CurrentVec:
    d: int
    coeffs: tuple[tuple, ...]

    def __post_init__(self):
        cs = tuple((_q(a), _q(b)) for a, b in self.coeffs)
        if len(cs) != self.d + 1:
            raise ValueError(f"expected {self.d + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, d: int, zero=Fraction(0)) -> "CurrentVec":
        return cls(d, tuple((zero, zero) for _ in range(d + 1)))

    @classmethod
    def basis(cls, d: int, m: int, c: int, zero=Fraction(0)) -> "CurrentVec":
        """e_{c+1} z^m."""
        one = _one_of(zero)
        cs = [[zero, zero] for _ in range(d + 1)]
        cs[m][c] = one
        return cls(d, tuple(tuple(p) for p in cs))

    @classmethod
    def from_flat(cls, d: int, flat: Sequence) -> "CurrentVec":
        flat = list(flat)
        return cls(d, tuple((flat[2 * m], flat[2 * m + 1]) for m in range(d + 1)))

    def flat(self) -> list:
        return [c for pair in self.coeffs for c in pair]

    @property
    def zero_scalar(self):
        return _zero_of(self.coeffs[0][0])

    def __add__(self, other: "CurrentVec") -> "CurrentVec":
        _same_d(self, other)
        return CurrentVec(self.d, tuple((a + c, b + e) for (a, b), (c, e) in zip(self.coeffs, other.coeffs)))

    def scale(self, s) -> "CurrentVec":
        return CurrentVec(self.d, tuple((a * s, b * s) for a, b in self.coeffs))

    def shift(self, m: int) -> "CurrentVec":
        """Multiplication by z^m, truncated."""
        z = self.zero_scalar
        cs = [(z, z)] * m + list(self.coeffs)
        return CurrentVec(self.d, tuple(cs[: self.d + 1]))

    def is_zero(self) -> bool:
        return all(not a and not b for a, b in self.coeffs)

    def to_json(self) -> dict:
        return {"d": self.d, "coeffs": [[str(a), str(b)] for a, b in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CurrentVec":
        return cls(int(obj["d"]), tuple((Fraction(str(a)), Fraction(str(b))) for a, b in obj["coeffs"]))


def _q(x):
    return Fraction(x) if isinstance(x, (int, str)) else x


def _same_d(a, b):
    if a.d != b.d:
        raise ValueError(f"truncation degrees differ: {a.d} vs {b.d}")


@dataclass(frozen=True)
class CurrentMat:
    d: int
    coeffs: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.d + 1:
            raise ValueError(f"expected {self.d + 1} coefficients")
        for M in self.coeffs:
            if M.shape != (2, 2) or M.trace():
                raise ValueError("coefficients must be traceless 2x2 matrices")

    @classmethod
    def monomial(cls, d: int, M: Matrix, m: int) -> "CurrentMat":
        """M z^m (zero if m > d)."""
        Z = Matrix.zeros(2, 2, zero=M.zero)
        return cls(d, tuple(M if a == m else Z for a in range(d + 1)))

    @classmethod
    def from_flat(cls, d: int, flat: Sequence) -> "CurrentMat":
        out = []
        for m in range(d + 1):
            e, f, h = flat[3 * m: 3 * m + 3]
            out.append(Matrix([[h, e], [f, -h]]))
        return cls(d, tuple(out))

    def flat(self) -> list:
        return [x for M in self.coeffs for x in (M[0, 1], M[1, 0], M[0, 0])]

    def act(self, v: CurrentVec) -> CurrentVec:
        _same_d(self, v)
        z = v.zero_scalar
        out = [[z, z] for _ in range(self.d + 1)]
        for m, M in enumerate(self.coeffs):
            if M.is_zero():
                continue
            for b, (p, q) in enumerate(v.coeffs[: self.d + 1 - m]):
                out[m + b][0] += M[0, 0] * p + M[0, 1] * q
                out[m + b][1] += M[1, 0] * p + M[1, 1] * q
        return CurrentVec(self.d, tuple(tuple(r) for r in out))

    def min_deg(self) -> int:
        return next((m for m, M in enumerate(self.coeffs) if not M.is_zero()), self.d + 1)

    def to_json(self) -> dict:
        return {"d": self.d, "coeffs": [M.to_json() for M in self.coeffs]}


# ---------------------------------------------------------------------------


def residue_form(f: CurrentVec, g: CurrentVec):
    """Sum over a + b = d of (f_a, g_b)_T."""
    _same_d(f, g)
    acc = f.zero_scalar
    for a in range(f.d + 1):
        acc = acc + _sp_pair(f.coeffs[a], g.coeffs[f.d - a])
    return acc


def residue_gram(d: int) -> Matrix:
    n = 2 * (d + 1)
    G = [[Fraction(0)] * n for _ in range(n)]
    for a in range(d + 1):
        b = d - a
        G[2 * a][2 * b + 1] += 1
        G[2 * a + 1][2 * b] -= 1
    return Matrix(G, cols=n)


def min_deg(x: CurrentVec) -> int:
    return next((m for m, (a, b) in enumerate(x.coeffs) if a or b), x.d + 1)


def action_matrix(x: CurrentVec) -> Matrix:
    """The linear map g_d -> V_d, xi -> xi.x, in flat coordinates."""
    d = x.d
    cols = []
    for m in range(d + 1):
        for M in SL2_BASIS:
            cols.append(CurrentMat.monomial(d, M, m).act(x).flat())
    return Matrix.from_columns(cols, rows=2 * (d + 1))


def annihilator(a, b) -> Matrix:
    """The rank-one traceless matrix [[-ab, a^2], [-b^2, ab]] killing (a, b)."""
    return Matrix([[-a * b, a * a], [-b * b, a * b]])


def _matrix_sending(u: Sequence, target: Sequence) -> Matrix:
    """First echelon traceless xi = [[h, e], [f, -h]] with xi u = target."""
    # unknowns (e, f, h):  row 0: e u1 + h u0 ; row 1: f u0 - h u1
    A = Matrix([[u[1], 0, u[0]], [0, u[0], -u[1]]])
    sol = solve_linear(A, Matrix.column(list(target)))
    if sol is None:
        raise ArithmeticError("sl2 does not reach the target vector")
    e, f, h = sol.col(0)
    return Matrix([[h, e], [f, -h]])


@dataclass(frozen=True)
class StabilizerBasis:
    d: int
    n: int
    xi: CurrentMat | None          # leading generator with min.deg 0 (None when x = 0)
    elements: tuple[CurrentMat, ...]

    @property
    def dim(self) -> int:
        return len(self.elements)

    def span(self) -> Subspace:
        return Subspace(3 * (self.d + 1), [e.flat() for e in self.elements])


def stabilizer(x: CurrentVec, check: bool = True) -> StabilizerBasis:
    """Basis {xi z^m : m <= d-n} + {sl2 z^m : m >= d+1-n} of the stabilizer of x."""
    d, n = x.d, min_deg(x)
    elements: list[CurrentMat] = []
    xi = None
    if n <= d:
        xn = x.coeffs[n]
        parts = [annihilator(*xn)]
        # coefficient of z^(n+s) in xi.x is sum_{m<=s} xi_m x_{n+s-m}
        for s in range(1, d - n + 1):
            acc = [Fraction(0), Fraction(0)]
            for m in range(s):
                y = x.coeffs[n + s - m]
                Pm = parts[m]
                acc[0] -= Pm[0, 0] * y[0] + Pm[0, 1] * y[1]
                acc[1] -= Pm[1, 0] * y[0] + Pm[1, 1] * y[1]
            parts.append(_matrix_sending(xn, acc))
        Z = Matrix.zeros(2, 2)
        parts += [Z] * (d + 1 - len(parts))
        xi = CurrentMat(d, tuple(parts))
        for m in range(d - n + 1):
            shifted = [Z] * m + parts[: d + 1 - m]
            elements.append(CurrentMat(d, tuple(shifted)))
    for m in range(d + 1 - n, d + 1):
        for M in SL2_BASIS:
            elements.append(CurrentMat.monomial(d, M, m))
    out = StabilizerBasis(d, n, xi, tuple(elements))
    if check:
        for el in elements:
            if not el.act(x).is_zero():
                raise AssertionError("stabilizer element does not annihilate x")
        if out.span() != kernel_basis(action_matrix(x)) or out.span().dim != out.dim:
            raise AssertionError("stabilizer disagrees with the kernel of the action map")
    return out


def orbit_tangent_rank(x: CurrentVec) -> int:
    return rank(action_matrix(x))


def stratum_data(x: CurrentVec) -> tuple[int, int, int]:
    """(min.deg, orbit dimension, stratum dimension)."""
    d, n = x.d, min_deg(x)
    orbit = 3 * (d + 1) - stabilizer(x).dim
    if orbit != orbit_tangent_rank(x):
        raise AssertionError("orbit dimension differs from the rank of the action map")
    stratum = 2 * (d + 1 - n)
    return n, orbit, stratum


def mu_x_eval(x: CurrentVec, v: CurrentVec, stab: StabilizerBasis | None = None) -> list:
    """(1/2 (xi_a v, v)) over the stabilizer basis of x."""
    _same_d(x, v)
    stab = stab or stabilizer(x, check=False)
    return [residue_form(xi.act(v), v) / 2 for xi in stab.elements]


def quadratic_forms(x: CurrentVec) -> list[Matrix]:
    """Gram matrices S_a with v^T S_a v = (xi_a v, v) for the stabilizer basis of x."""
    G = residue_gram(x.d)
    out = []
    n = 2 * (x.d + 1)
    for xi in stabilizer(x, check=False).elements:
        A = Matrix.from_columns([xi.act(CurrentVec.from_flat(x.d, [Fraction(int(a == b)) for a in range(n)])).flat()
                                 for b in range(n)], rows=n)
        out.append(A.T @ G)
    return out


def claimed_fiber_exponents(d: int, n: int) -> tuple[int, int]:
    if not 0 <= n <= d + 1:
        raise ValueError(f"n must lie in [0, {d + 1}]")
    return (n - 1) // 2 + 1, d // 2 + 1


def claimed_fiber(d: int, n: int) -> Subspace:
    """z^{floor((n-1)/2)+1} C[z] e1 + z^{floor(d/2)+1} V_d."""
    a, b = claimed_fiber_exponents(d, n)
    vecs = []
    for m in range(d + 1):
        if m >= a or m >= b:
            vecs.append(CurrentVec.basis(d, m, 0).flat())
        if m >= b:
            vecs.append(CurrentVec.basis(d, m, 1).flat())
    return Subspace(2 * (d + 1), vecs)


def claimed_fiber_coords(d: int, n: int) -> list[int]:
    """Flat indices spanning the claimed fibre (it is a coordinate subspace)."""
    a, b = claimed_fiber_exponents(d, n)
    out = []
    for m in range(d + 1):
        if m >= a or m >= b:
            out.append(2 * m)
        if m >= b:
            out.append(2 * m + 1)
    return out


@dataclass(frozen=True)
class NilpotentEmbedding:
    d: int
    B: Matrix
    gram: Matrix
    images: tuple[Matrix, ...]     # action matrices of E z^m, F z^m, H z^m

    def embed(self, xi: CurrentMat) -> Matrix:
        acc = Matrix.zeros(self.B.rows, self.B.cols)
        for c, img in zip(xi.flat(), self.images):
            if c:
                acc = acc + img.scale(c)
        return acc


def generic_nilpotent_embedding(d: int) -> NilpotentEmbedding:
    """B = multiplication by z on V_d; checks that sp(V)^B is exactly the image of g_d."""
    n = 2 * (d + 1)
    G = residue_gram(d)

    def unit(b):
        return CurrentVec.from_flat(d, [Fraction(int(a == b)) for a in range(n)])

    B = Matrix.from_columns([unit(b).shift(1).flat() for b in range(n)], rows=n)
    if B.T @ G != G @ B:
        raise AssertionError("multiplication by z is not self-adjoint")
    images = []
    for m in range(d + 1):
        for M in SL2_BASIS:
            xi = CurrentMat.monomial(d, M, m)
            images.append(Matrix.from_columns([xi.act(unit(b)).flat() for b in range(n)], rows=n))
    # X with X^T G + G X = 0 and X B - B X = 0, unknowns X[r][c] at r*n + c
    eqs = []
    for r in range(n):
        for c in range(n):
            row = [Fraction(0)] * (n * n)
            for s in range(n):
                row[s * n + r] += G[s, c]     # (X^T G)_{rc}
                row[s * n + c] += G[r, s]     # (G X)_{rc}
            eqs.append(row)
            row = [Fraction(0)] * (n * n)
            for s in range(n):
                row[r * n + s] += B[s, c]     # (X B)_{rc}
                row[s * n + c] -= B[r, s]     # (B X)_{rc}
            eqs.append(row)
    commutant = kernel_basis(Matrix(eqs, cols=n * n))
    image = Subspace(n * n, [img.flat() for img in images])
    if commutant != image or image.dim != 3 * (d + 1):
        raise AssertionError("sp(V)^B differs from the image of g_d")
    return NilpotentEmbedding(d, B, G, tuple(images))
