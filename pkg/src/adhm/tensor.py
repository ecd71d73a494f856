"""Tensor products of ADHM data and the symmetric/exterior square constructions.

Coordinates.  For data on (V, W) and (V', W') with k = dim V, N = dim W,
k' = dim V', N' = dim W':

* V (x) W' has index a*N' + w',
* W (x) V' has index w*k' + b (offset k*N'),
* W~ = W (x) W' has index w*N' + w'.

Self-tensor frame.  After diagonalising B1 with eigenvectors v_l, a pair
(w, w') in W (+) W stands for v_l (x) w + w' (x) v_l.  The frame basis of
V~ lists, for each block l,

    (e,-e), (f,-f), (e,e), (f,f), (w,w) for w in W0, (w,-w) for w in W0

with weights -1, +1, 0, 0, 0..., 0...  under the one-parameter family Phi(t).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .datum import (ALTERNATING, SYMMETRIC, AdhmDatum, BilinearForm, SoDatum, as_datum,
                    b1_spectrum, change_basis, compatible_form, is_regular, moment_map_gl,
                    standard_symplectic)
from .errors import (ClosedFormMismatch, CommonEigenvalue, ContainmentViolation,
                     DegenerateFrame, GenericityFailure, InvariantViolation, NotStable,
                     PoleAtZero)
from .linalg import (Matrix, RatFunc, Subspace, det, inverse, invariant_closure,
                     kernel_vectors, solve_linear, sylvester_solve)

# ---------------------------------------------------------------------------
# plain tensor product


def _zero_like(x: AdhmDatum):
    return x.B1.zero


def tensor(x, xp) -> AdhmDatum:
    """The datum T(x, x') on (V (x) W' + W (x) V', W (x) W')."""
    x, xp = as_datum(x), as_datum(xp)
    k, N, kp, Np = x.dimV, x.dimW, xp.dimV, xp.dimW
    zero = _zero_like(x) if k or N else _zero_like(xp)
    I_N = Matrix.identity(N, zero=zero)
    I_Np = Matrix.identity(Np, zero=zero)
    A1 = x.B1.kron(I_Np)
    D1 = I_N.kron(xp.B1)
    C12 = x.i.kron(xp.j)
    C21 = x.j.kron(xp.i)
    if C12.is_zero() and C21.is_zero():
        X = Matrix.zeros(k * Np, N * kp, zero=zero)
        Y = Matrix.zeros(N * kp, k * Np, zero=zero)
    else:
        X = sylvester_solve(A1, D1, C12)
        Y = sylvester_solve(D1, A1, C21)
    Z12 = Matrix.zeros(k * Np, N * kp, zero=zero)
    B1 = Matrix.block([[A1, Z12], [Z12.T, D1]])
    B2 = Matrix.block([[x.B2.kron(I_Np), X], [Y, I_N.kron(xp.B2)]])
    i = x.i.kron(I_Np).vstack(I_N.kron(xp.i))
    j = x.j.kron(I_Np).hstack(I_N.kron(xp.j))
    return AdhmDatum(B1, B2, i, j)


def dual_datum(x) -> AdhmDatum:
    x = as_datum(x)
    return AdhmDatum(x.B1.T, x.B2.T, -x.j.T, x.i.T)


def tensor_dual_check(x, xp, product: AdhmDatum | None = None) -> bool:
    """Does T(x^dual, x'^dual) equal T(x, x')^dual in the standard coordinates?

    ``product`` may be supplied to test a (possibly corrupted) candidate for
    T(x, x') instead of recomputing it.
    """
    lhs = tensor(dual_datum(x), dual_datum(xp))
    rhs = dual_datum(product if product is not None else tensor(x, xp))
    return lhs == rhs


def product_forms(formV: BilinearForm, formW: BilinearForm,
                  formVp: BilinearForm, formWp: BilinearForm) -> tuple[BilinearForm, BilinearForm]:
    """Induced forms on V~ = V(x)W' + W(x)V' and W~ = W(x)W'."""
    G = Matrix.block_diag([formV.gram.kron(formWp.gram), formW.gram.kron(formVp.gram)])
    kindV = SYMMETRIC if formV.kind == formWp.kind else ALTERNATING
    kindW = SYMMETRIC if formW.kind == formWp.kind else ALTERNATING
    return BilinearForm(kindV, G), BilinearForm(kindW, formW.gram.kron(formWp.gram))


# ---------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class BlockFrame:
    eigenvalues: tuple[Fraction, ...]
    eigenvectors: Matrix                 # columns v_l in the original coordinates of V
    e: tuple[tuple[Fraction, ...], ...]
    f: tuple[tuple[Fraction, ...], ...]
    w0: tuple[tuple[tuple[Fraction, ...], ...], ...]
    norms: tuple[Fraction, ...] | None = None   # (v_l, v_l)_V in the symplectic case
    omega: Matrix | None = None                 # auxiliary symplectic form (SU(4) case)

    @property
    def k(self) -> int:
        return len(self.eigenvalues)

    def to_json(self) -> dict:
        def vec(v):
            return [str(c) for c in v]
        out = {
            "eigenvalues": vec(self.eigenvalues),
            "eigenvectors": self.eigenvectors.to_json(),
            "e": [vec(v) for v in self.e],
            "f": [vec(v) for v in self.f],
            "W0": [[vec(v) for v in blk] for blk in self.w0],
        }
        if self.norms is not None:
            out["norms"] = vec(self.norms)
        if self.omega is not None:
            out["omega"] = self.omega.to_json()
        return out


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q <= 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _eigenbasis(x, orth_form: BilinearForm | None):
    spec = b1_spectrum(x)
    if not spec.distinct:
        raise ValueError("B1 must have distinct eigenvalues")
    B1 = as_datum(x).B1
    k = B1.rows
    vecs, norms = [], []
    for lam in spec.eigenvalues:
        v = kernel_vectors(B1 - Matrix.identity(k).scale(lam))[0]
        if orth_form is not None:
            c = orth_form.pair(v, v)
            s = _rational_sqrt(c)
            if s is not None:
                v = [a / s for a in v]
                c = Fraction(1)
            norms.append(c)
        vecs.append(v)
    P = Matrix.from_columns(vecs, rows=k)
    return spec.eigenvalues, P, (tuple(norms) if orth_form is not None else None)


def _complement_in(kernel: list[list], avoid: list[list], n: int) -> list[list]:
    """Greedy echelon complement of span(avoid) inside span(kernel)."""
    chosen: list[list] = []
    current = Subspace(n, avoid)
    for v in kernel:
        if not current.contains(v):
            chosen.append(v)
            current = Subspace(n, current.vectors() + [v])
    return chosen


def _frame_from_eigenbasis(xe: AdhmDatum, formW: BilinearForm | None, omega: Matrix | None):
    k, N = xe.dimV, xe.dimW
    es, fs, w0s = [], [], []
    for l in range(k):
        il = list(xe.i.row(l))
        fl = list(xe.j.col(l))
        if not any(il):
            raise NotStable(f"i vanishes on block {l}")
        if omega is not None:
            om_f = list((omega @ Matrix.column(fl)).col(0))
            A = Matrix([il, om_f])
            sol = solve_linear(A, Matrix.column([1, 1]))
            if sol is None:
                raise DegenerateFrame(f"no e with i(e) = 1 and omega(e, f) = 1 on block {l}")
            el = list(sol.col(0))
        else:
            el = list(solve_linear(Matrix([il]), Matrix.column([1])).col(0))
        if Subspace(N, [el, fl]).dim < 2:
            raise DegenerateFrame(f"e and f are dependent on block {l}")
        if formW is not None:
            G = formW.gram
            constraints = Matrix([list((Matrix([el]) @ G).row(0)), list((Matrix([fl]) @ G).row(0))])
            w0 = kernel_vectors(constraints)
        elif omega is not None:
            constraints = Matrix([il, list((Matrix([el]) @ omega).row(0))])
            w0 = kernel_vectors(constraints)
        else:
            w0 = _complement_in(kernel_vectors(Matrix([il])), [fl], N)
        if len(w0) != N - 2:
            raise DegenerateFrame(f"W0 has dimension {len(w0)} on block {l}")
        es.append(tuple(el))
        fs.append(tuple(fl))
        w0s.append(tuple(tuple(v) for v in w0))
    return tuple(es), tuple(fs), tuple(w0s)


def _split_input(x):
    """Return (AdhmDatum, formV, formW) with forms only for symplectic-W input."""
    if isinstance(x, SoDatum):
        if x.formW.kind != ALTERNATING:
            raise ValueError("self-tensor needs W symplectic (V orthogonal) for form-carrying input")
        return x.datum, x.formV, x.formW
    return x, None, None


def block_frame(x, omega: Matrix | None = None) -> BlockFrame:
    xd, formV, formW = _split_input(x)
    lam, P, norms = _eigenbasis(xd, formV)
    xe = change_basis(xd, P)
    e, f, w0 = _frame_from_eigenbasis(xe, formW, omega)
    if formW is not None:
        for l in range(len(lam)):
            if formW.pair(e[l], f[l]) != norms[l]:
                raise DegenerateFrame("pairing of e and f does not match the eigenvector norm")
    return BlockFrame(tuple(lam), P, e, f, w0, norms, omega)


def frame_matrix(frame: BlockFrame, N: int) -> tuple[Matrix, tuple[int, ...]]:
    """Columns = frame basis of V~ in tensor coordinates, and their Phi-weights."""
    k = frame.k
    dim = 2 * k * N
    cols, weights = [], []

    def pair(l, w, wp):
        v = [Fraction(0)] * dim
        for c in range(N):
            v[l * N + c] = w[c]
            v[k * N + c * k + l] = wp[c]
        return v

    for l in range(k):
        e, f = frame.e[l], frame.f[l]
        neg = lambda u: [-a for a in u]  # noqa: E731
        cols += [pair(l, e, neg(e)), pair(l, f, neg(f)), pair(l, e, e), pair(l, f, f)]
        weights += [-1, 1, 0, 0]
        for w in frame.w0[l]:
            cols.append(pair(l, w, w))
            weights.append(0)
        for w in frame.w0[l]:
            cols.append(pair(l, w, neg(w)))
            weights.append(0)
    return Matrix.from_columns(cols, rows=dim), tuple(weights)


# ---------------------------------------------------------------------------
# Q(t) helpers


def _lift(M: Matrix) -> Matrix:
    return M.map(RatFunc.const, zero=RatFunc())


def _t_power(rf: RatFunc, m: int) -> RatFunc:
    if m == 0 or not rf:
        return rf
    if m > 0:
        return RatFunc((Fraction(0),) * m + rf.num, rf.den)
    return RatFunc(rf.num, (Fraction(0),) * (-m) + rf.den)


def _split(M: Matrix) -> dict:
    """M = sum over (den, n) of t^n / den * C[(den, n)] with constant C."""
    parts: dict = {}
    for r, row in enumerate(M.data):
        for c, rf in enumerate(row):
            if not rf:
                continue
            for n, coef in enumerate(rf.num):
                if coef:
                    key = (rf.den, n)
                    if key not in parts:
                        parts[key] = [[Fraction(0)] * M.cols for _ in range(M.rows)]
                    parts[key][r][c] = coef
    return {key: Matrix(rows, cols=M.cols) for key, rows in parts.items()}


def _conjugate(M: Matrix, Qi: Matrix, Q: Matrix) -> Matrix:
    """Q^-1 M Q for a Q(t)-matrix M and constant Q, done per constant component."""
    n = Qi.rows
    acc: dict = {}
    for (den, p), C in _split(M).items():
        D = Qi @ C @ Q
        bucket = acc.setdefault(den, [[[] for _ in range(Q.cols)] for _ in range(n)])
        for r in range(n):
            for c in range(Q.cols):
                if D[r, c]:
                    bucket[r][c].append((p, D[r, c]))
    out = [[RatFunc() for _ in range(Q.cols)] for _ in range(n)]
    for den, bucket in acc.items():
        for r in range(n):
            for c in range(Q.cols):
                terms = bucket[r][c]
                if terms:
                    num = [Fraction(0)] * (max(p for p, _ in terms) + 1)
                    for p, v in terms:
                        num[p] += v
                    out[r][c] = out[r][c] + RatFunc(num, den)
    return Matrix(out, cols=Q.cols, zero=RatFunc())


def _scale_weights(M: Matrix, row_w: Sequence[int] | None, col_w: Sequence[int] | None) -> Matrix:
    out = []
    for r, row in enumerate(M.data):
        line = []
        for c, rf in enumerate(row):
            m = (row_w[r] if row_w else 0) - (col_w[c] if col_w else 0)
            line.append(_t_power(rf, m))
        out.append(line)
    return Matrix(out, cols=M.cols, zero=RatFunc())


def _at_zero(M: Matrix, name: str) -> Matrix:
    out = []
    for r, row in enumerate(M.data):
        line = []
        for c, rf in enumerate(row):
            if rf.has_pole_at(0):
                raise PoleAtZero(f"{name}[{r},{c}] = {rf} has a pole at t = 0")
            line.append(rf(0))
        out.append(line)
    return Matrix(out, cols=M.cols)


# ---------------------------------------------------------------------------
# self-tensor product


@dataclass(frozen=True)
class SelfTensorResult:
    datum: AdhmDatum                 # the t -> 0 limit in frame coordinates of V~
    frame: BlockFrame
    weights: tuple[int, ...]
    N: int
    formV: BilinearForm | None = None    # induced forms (symplectic-W input only)
    formW: BilinearForm | None = None
    family: AdhmDatum | None = field(default=None, compare=False, repr=False)  # Phi(t).T(x_t, x)
    frame_gram_t: Matrix | None = field(default=None, compare=False, repr=False)

    @property
    def k(self) -> int:
        return self.frame.k

    def weight_spaces(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for idx, w in enumerate(self.weights):
            out.setdefault(w, []).append(idx)
        return out

    @property
    def so_datum(self) -> SoDatum:
        if self.formV is None:
            raise ValueError("no forms attached: input was a GL datum")
        return SoDatum.from_datum(self.datum, self.formV, self.formW)


def self_tensor(x, omega: Matrix | None = None, keep_family: bool = False,
                frame: BlockFrame | None = None) -> SelfTensorResult:
    """Limit at t = 0 of Phi(t) . T(x_t, x) where x_t translates B1 by t.

    ``frame`` overrides the deterministic frame choice; it must satisfy the
    frame invariants relative to its own eigenvectors.
    """
    xd, formV, formW = _split_input(x)
    if not moment_map_gl(xd).is_zero():
        raise InvariantViolation("input is not in the zero fibre of the moment map")
    if not is_regular(xd):
        raise NotStable("input is not regular")
    if frame is None:
        frame = block_frame(x, omega)
    k, N = xd.dimV, xd.dimW
    xe = change_basis(xd, frame.eigenvectors)

    t = RatFunc.t()
    xe_t = AdhmDatum(*(_lift(m) for m in xe.matrices()))
    shifted = AdhmDatum(xe_t.B1 + Matrix.identity(k, zero=RatFunc()).scale(t), xe_t.B2, xe_t.i, xe_t.j)
    T = tensor(shifted, xe_t)

    Q, weights = frame_matrix(frame, N)
    Qi = inverse(Q)
    B1t = _scale_weights(_conjugate(T.B1, Qi, Q), weights, weights)
    B2t = _scale_weights(_conjugate(T.B2, Qi, Q), weights, weights)
    it =_scale_weights(_lift(Qi) @ T.i, weights, None)
    jt = _scale_weights(T.j @ _lift(Q), None, weights)
    limit = AdhmDatum(_at_zero(B1t, "B1"), _at_zero(B2t, "B2"), _at_zero(it, "i"), _at_zero(jt, "j"))

    fV = fW = None
    gram_t = None
    if formV is not None:
        xe_so = change_basis(x, frame.eigenvectors)
        tV, tW = product_forms(xe_so.formV, formW, xe_so.formV, formW)
        fV = tV.transform(Q)
        fW = tW
        if keep_family:
            Phi = Matrix.diag([_t_power(RatFunc.const(1), w) for w in weights], zero=RatFunc())
            gram_t = Phi.T @ _lift(fV.gram) @ Phi
    family = AdhmDatum(B1t, B2t, it, jt) if keep_family else None
    return SelfTensorResult(limit, frame, weights, N, fV, fW, family, gram_t)


# ---------------------------------------------------------------------------
# symmetric and exterior squares


def sym_basis(N: int) -> list[list[Fraction]]:
    out = []
    for a in range(N):
        for b in range(a, N):
            v = [Fraction(0)] * (N * N)
            v[a * N + b] += 1
            if a != b:
                v[b * N + a] += 1
            out.append(v)
    return out


def ext_basis(N: int) -> list[list[Fraction]]:
    out = []
    for a in range(N):
        for b in range(a + 1, N):
            v = [Fraction(0)] * (N * N)
            v[a * N + b] = Fraction(1)
            v[b * N + a] = Fraction(-1)
            out.append(v)
    return out


def _frame_coords(r: SelfTensorResult) -> tuple[list[int], list[int]]:
    N = r.N
    s_idx, e_idx = [], []
    for l in range(r.k):
        base = 2 * N * l
        s_idx += [base + m for m in range(4)] + [base + 4 + m for m in range(N - 2)]
        e_idx += [base + 4 + (N - 2) + m for m in range(N - 2)]
    return s_idx, e_idx


def _unit_vectors(idx: list[int], n: int) -> list[list[Fraction]]:
    out = []
    for a in idx:
        v = [Fraction(0)] * n
        v[a] = Fraction(1)
        out.append(v)
    return out


def vs_ve(r: SelfTensorResult) -> tuple[Subspace, Subspace]:
    """V_S, V_E as invariant closures, checked against their closed form in frame coordinates."""
    x = r.datum
    n = x.dimV
    ops = [x.B1, x.B2]
    seed_s = Subspace(n, (x.i @ Matrix.from_columns(sym_basis(r.N), rows=r.N * r.N)).columns())
    seed_e = Subspace(n, (x.i @ Matrix.from_columns(ext_basis(r.N), rows=r.N * r.N)).columns()) \
        if r.N > 1 else Subspace.zero_space(n)
    VS = invariant_closure(seed_s, ops)
    VE = invariant_closure(seed_e, ops)
    s_idx, e_idx = _frame_coords(r)
    if VS != Subspace(n, _unit_vectors(s_idx, n)):
        raise ClosedFormMismatch("V_S differs from its closed form")
    if VE != Subspace(n, _unit_vectors(e_idx, n)):
        raise ClosedFormMismatch("V_E differs from its closed form")
    return VS, VE


@dataclass(frozen=True)
class Restriction:
    datum: AdhmDatum
    v_basis: Matrix     # columns: basis of the V-subspace in frame coordinates of V~
    w_basis: Matrix     # columns: basis of the W-subspace in coordinates of W~


def restrict(x: AdhmDatum, v_basis: Matrix, w_basis: Matrix) -> AdhmDatum:
    """Restriction of x to (span v_basis, span w_basis); both must be compatible."""
    VS = Subspace.column_space(v_basis)
    WS = Subspace.column_space(w_basis)
    for B in (x.B1, x.B2):
        if not VS.image(B) <= VS:
            raise ContainmentViolation("subspace is not invariant under B")
    if not WS.image(x.i) <= VS:
        raise ContainmentViolation("i does not map the W-subspace into the V-subspace")
    if not VS.image(x.j) <= WS:
        raise ContainmentViolation("j does not map the V-subspace into the W-subspace")

    def coords(basis: Matrix, M: Matrix) -> Matrix:
        sol = solve_linear(basis, M)
        assert sol is not None
        return sol

    B1 = coords(v_basis, x.B1 @ v_basis)
    B2 = coords(v_basis, x.B2 @ v_basis)
    i = coords(v_basis, x.i @ w_basis)
    j = coords(w_basis, x.j @ v_basis)
    return AdhmDatum(B1, B2, i, j)


def restrict_sym(r: SelfTensorResult) -> Restriction:
    n = r.datum.dimV
    s_idx, _ = _frame_coords(r)
    vb = Matrix.from_columns(_unit_vectors(s_idx, n), rows=n)
    wb = Matrix.from_columns(sym_basis(r.N), rows=r.N * r.N)
    return Restriction(restrict(r.datum, vb, wb), vb, wb)


def restrict_ext(r: SelfTensorResult) -> Restriction:
    n = r.datum.dimV
    _, e_idx = _frame_coords(r)
    vb = Matrix.from_columns(_unit_vectors(e_idx, n), rows=n) if e_idx else Matrix.zeros(n, 0)
    eb = ext_basis(r.N)
    wb = Matrix.from_columns(eb, rows=r.N * r.N) if eb else Matrix.zeros(r.N * r.N, 0)
    return Restriction(restrict(r.datum, vb, wb), vb, wb)


def framed_sum(x: AdhmDatum, y: AdhmDatum) -> AdhmDatum:
    """Direct sum of framed data: both V and W are summed."""
    return AdhmDatum(Matrix.block_diag([x.B1, y.B1]), Matrix.block_diag([x.B2, y.B2]),
                     Matrix.block_diag([x.i, y.i]), Matrix.block_diag([x.j, y.j]))


def sym_ext_reconstruction(r: SelfTensorResult) -> bool:
    """Is r.datum, in the bases (V_S | V_E, S^2W | L^2W), the framed sum of the restrictions?"""
    s, e = restrict_sym(r), restrict_ext(r)
    Pv = s.v_basis.hstack(e.v_basis)
    Pw = s.w_basis.hstack(e.w_basis)
    Pvi, Pwi = inverse(Pv), inverse(Pw)
    x = r.datum
    moved = AdhmDatum(Pvi @ x.B1 @ Pv, Pvi @ x.B2 @ Pv, Pvi @ x.i @ Pw, Pwi @ x.j @ Pv)
    return moved == framed_sum(s.datum, e.datum)


# ---------------------------------------------------------------------------
# exceptional isomorphisms


def _usp_input(x, N: int):
    """Accept a symplectic-W SoDatum, or a GL datum for which a compatible orthogonal form exists."""
    if isinstance(x, SoDatum):
        if x.dimW != N or x.formW.kind != ALTERNATING:
            raise ValueError(f"expected W of dimension {N} with a symplectic form")
        return x
    if x.dimW != N:
        raise ValueError(f"expected W of dimension {N}")
    formW = standard_symplectic(N)
    formV = compatible_form(x, formW, SYMMETRIC)
    if formV is None:
        raise InvariantViolation("no orthogonal form on V makes the datum symplectic")
    return SoDatum.from_datum(x, formV, formW)


def iso_so3(x) -> SoDatum:
    """SU(2) = USp(1) datum -> SO(3) datum on (V_S, S^2 W)."""
    y = _usp_input(x, 2)
    r = self_tensor(y)
    vs_ve(r)
    s = restrict_sym(r)
    formV = r.formV.restrict(s.v_basis)
    formW = r.formW.restrict(s.w_basis)
    return SoDatum.from_datum(s.datum, formV, formW)


def omega_kernel_basis(formW: BilinearForm) -> Matrix:
    """Basis (in W~ coordinates) of Ker(omega) inside Lambda^2 W, omega(a^b) = (a, b)_W."""
    N = formW.dim
    eb = ext_basis(N)
    om = [sum((v[a * N + b] * formW.gram[a, b] for a in range(N) for b in range(N)), Fraction(0))
          for v in eb]
    coeffs = kernel_vectors(Matrix([om]))
    vecs = [[sum((c[m] * eb[m][p] for m in range(len(eb))), Fraction(0)) for p in range(N * N)]
            for c in coeffs]
    return Matrix.from_columns(vecs, rows=N * N)


def iso_so5(x) -> SoDatum:
    """USp(2) datum (dim W = 4) -> SO(5) datum on (V_E, Ker omega)."""
    if not isinstance(x, SoDatum) or x.dimW != 4 or x.formW.kind != ALTERNATING:
        raise ValueError("iso_so5 expects an orthogonal-V / symplectic-W datum with dim W = 4")
    r = self_tensor(x)
    vs_ve(r)
    e = restrict_ext(r)
    K = omega_kernel_basis(x.formW)
    datum = restrict(r.datum, e.v_basis, K)
    formV = r.formV.restrict(e.v_basis)
    formW = r.formW.restrict(K)
    return SoDatum.from_datum(datum, formV, formW)


VOLUME_PFAFFIAN = Fraction(1)


def pfaffian4(M: Matrix) -> Fraction:
    return M[0, 1] * M[2, 3] - M[0, 2] * M[1, 3] + M[0, 3] * M[1, 2]


def wedge_form() -> BilinearForm:
    """(alpha, beta) -> (alpha ^ beta) / (E1^E2^E3^E4) on Lambda^2 C^4, in the ext_basis coordinates."""
    pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    G = [[Fraction(0)] * 6 for _ in range(6)]
    for p, (a, b) in enumerate(pairs):
        for q, (c, d) in enumerate(pairs):
            idx = [a, b, c, d]
            if len(set(idx)) < 4:
                continue
            inv = sum(1 for s in range(4) for u in range(s + 1, 4) if idx[s] > idx[u])
            G[p][q] = Fraction(-1 if inv % 2 else 1)
    return BilinearForm(SYMMETRIC, Matrix(G))


def generic_omega(frame_data: AdhmDatum, rng: random.Random, retries: int = 32) -> Matrix:
    """Random symplectic form on C^4 with Pf = 1 admitting the (e_l, f_l) frame."""
    for _ in range(retries):
        M = [[Fraction(0)] * 4 for _ in range(4)]
        for a in range(4):
            for b in range(a + 1, 4):
                v = Fraction(rng.randint(-3, 3))
                M[a][b], M[b][a] = v, -v
        M = Matrix(M)
        pf = pfaffian4(M)
        s = _rational_sqrt(pf / VOLUME_PFAFFIAN) if pf else None
        if s is None:
            continue
        M = M.scale(1 / s)
        try:
            _frame_from_eigenbasis(frame_data, None, M)
        except (DegenerateFrame, NotStable):
            continue
        return M
    raise GenericityFailure(f"no admissible symplectic form found in {retries} draws")


def iso_so6(x: AdhmDatum, seed: int = 0) -> tuple[SoDatum, Matrix]:
    """SU(4) datum -> SO(6) datum on (V_E, Lambda^2 W); also returns the omega used."""
    x = as_datum(x)
    if x.dimW != 4:
        raise ValueError("iso_so6 expects dim W = 4")
    lam, P, _ = _eigenbasis(x, None)
    xe = change_basis(x, P)
    omega = generic_omega(xe, random.Random(seed))
    r = self_tensor(x, omega=omega)
    vs_ve(r)
    e = restrict_ext(r)
    formW = wedge_form()
    formV = compatible_form(e.datum, formW, ALTERNATING)
    if formV is None:
        raise InvariantViolation("no symplectic form on V_E is compatible with the wedge form")
    return SoDatum.from_datum(e.datum, formV, formW), omega


def ratio_if_proportional(A: Matrix, B: Matrix) -> Fraction | None:
    """c with A = c B, if it exists."""
    c = None
    for a, b in zip(A.flat(), B.flat()):
        if b == 0:
            if a != 0:
                return None
            continue
        q = a / b
        if c is None:
            c = q
        elif q != c:
            return None
    return c


__all__ = [
    "tensor", "tensor_dual_check", "product_forms", "BlockFrame", "block_frame", "frame_matrix",
    "SelfTensorResult", "self_tensor", "vs_ve", "restrict_sym", "restrict_ext", "restrict",
    "framed_sum", "sym_ext_reconstruction", "iso_so3", "iso_so5", "iso_so6", "wedge_form",
    "omega_kernel_basis", "generic_omega", "sym_basis", "ext_basis", "ratio_if_proportional",
    "CommonEigenvalue", "det",
]
