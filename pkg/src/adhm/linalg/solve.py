"""Gaussian elimination, solvers, determinants and characteristic polynomials.

Pivoting is fixed: columns are scanned left to right and the first row (in
index order) with a nonzero entry becomes the pivot row.  Since the reduced
echelon form is unique, every routine here is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from ..errors import CommonEigenvalue, DimensionMismatch, NotSplitOverBase
from .matrix import Matrix, _one_of
from .scalars import pdivmod, pexactdiv, pgcd, pmul, psub, ptrim


def _rref_rows(rows: list[list], ncols: int, zero) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form of a list of rows."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        if prow[c] != 1:
            inv = 1 / prow[c]
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [k for k in range(c, ncols) if prow[k]]
        for k in range(nrows):
            if k == r:
                continue
            f = rows[k][c]
            if not f:
                continue
            row = rows[k]
            for m in nz:
                row[m] = row[m] - f * prow[m]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    rows, piv = _rref_rows([list(r) for r in A.data], A.cols, A.zero)
    return Matrix(rows, cols=A.cols, zero=A.zero), piv


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def solve_linear(A: Matrix, b: Matrix) -> Matrix | None:
    """One solution of A x = b (free variables set to 0), or None."""
    if A.rows != b.rows:
        raise DimensionMismatch(f"A has {A.rows} rows but b has {b.rows}")
    n = A.cols
    aug = [list(ra) + list(rb) for ra, rb in zip(A.data, b.data)]
    rows, piv = _rref_rows(aug, n + b.cols, A.zero)
    if piv and piv[-1] >= n:
        return None
    x = [[A.zero] * b.cols for _ in range(n)]
    for r, c in enumerate(piv):
        x[c] = rows[r][n:]
    return Matrix(x, cols=b.cols, zero=A.zero)


def kernel_vectors(A: Matrix) -> list[list]:
    """Basis of {x : A x = 0}, one vector per free column, in RREF-dual form."""
    n = A.cols
    rows, piv = _rref_rows([list(r) for r in A.data], n, A.zero)
    one = _one_of(A.zero)
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [A.zero] * n
        v[f] = one
        for r, c in enumerate(piv):
            if rows[r][f]:
                v[c] = -rows[r][f]
        basis.append(v)
    return basis


def inverse(A: Matrix) -> Matrix:
    if not A.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = A.rows
    I = Matrix.identity(n, zero=A.zero)
    aug = [list(ra) + list(ri) for ra, ri in zip(A.data, I.data)]
    rows, piv = _rref_rows(aug, 2 * n, A.zero)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in rows], cols=n, zero=A.zero)


def is_invertible(A: Matrix) -> bool:
    return A.is_square() and rank(A) == A.rows


def det(A: Matrix):
    if not A.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = A.rows
    rows = [list(r) for r in A.data]
    sign = 1
    acc = _one_of(A.zero)
    for c in range(n):
        p = next((k for k in range(c, n) if rows[k][c]), None)
        if p is None:
            return A.zero
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        acc = acc * piv
        for k in range(c + 1, n):
            f = rows[k][c]
            if not f:
                continue
            f = f / piv
            for m in range(c, n):
                if rows[c][m]:
                    rows[k][m] = rows[k][m] - f * rows[c][m]
    return acc if sign == 1 else -acc


def charpoly(A: Matrix) -> tuple:
    """det(xI - A) as a coefficient tuple (low degree first), via Bareiss.

    The leading principal minors of xI - A are monic, so no pivoting is needed
    and every Bareiss division is exact.
    """
    if not A.is_square():
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = A.rows
    if n == 0:
        return (Fraction(1),)
    M = [[ptrim((-Fraction(A.data[a][b]), Fraction(1)) if a == b else (-Fraction(A.data[a][b]),))
          for b in range(n)] for a in range(n)]
    prev = (Fraction(1),)
    for k in range(n - 1):
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(pk, M[i][j]), pmul(M[i][k], M[k][j]))
                M[i][j] = pexactdiv(num, prev) if num else ()
        prev = pk
    return M[n - 1][n - 1]


def poly_gcd(a, b) -> tuple:
    return pgcd(a, b)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(poly) -> list[Fraction]:
    """All roots of a rational polynomial, with multiplicity, sorted.

    Raises NotSplitOverBase if the polynomial does not split into linear
    factors over Q.
    """
    p = ptrim(Fraction(c) for c in poly)
    if not p:
        raise ValueError("zero polynomial has no finite root set")
    roots: list[Fraction] = []
    while len(p) > 1 and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
    while len(p) > 1:
        den = lcm(*(c.denominator for c in p))
        ints = [int(c * den) for c in p]
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints]
        found = None
        for q in _divisors(ints[-1]):
            for s in _divisors(ints[0]):
                for cand in (Fraction(s, q), Fraction(-s, q)):
                    acc = 0
                    for c in reversed(ints):
                        acc = acc * cand + c
                    if acc == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise NotSplitOverBase(f"polynomial {[str(c) for c in p]} has no rational root")
        roots.append(found)
        q, r = pdivmod(p, (-found, Fraction(1)))
        assert not r
        p = q
    return sorted(roots)


def _is_diagonal(A: Matrix) -> bool:
    return all(not A.data[a][b] for a in range(A.rows) for b in range(A.cols) if a != b)


def sylvester_solve(A: Matrix, B: Matrix, C: Matrix) -> Matrix:
    """The unique X with A X - X B + C = 0.

    Over Q, uniqueness is certified up front by gcd(char A, char B) = 1.  Over
    other fields (and for diagonal inputs) singularity of the vectorized
    operator is detected during elimination instead.
    """
    a, b = A.rows, B.rows
    if not A.is_square() or not B.is_square() or C.shape != (a, b):
        raise DimensionMismatch(f"sylvester shapes A{A.shape} B{B.shape} C{C.shape}")
    zero = C.zero if a and b else A.zero
    if a == 0 or b == 0:
        return Matrix.zeros(a, b, zero=zero)
    if _is_diagonal(A) and _is_diagonal(B):
        out = []
        for r in range(a):
            line = []
            for c in range(b):
                gap = A.data[r][r] - B.data[c][c]
                if not gap:
                    raise CommonEigenvalue(f"diagonal entries A[{r}] and B[{c}] coincide")
                line.append(-C.data[r][c] / gap)
            out.append(line)
        return Matrix(out, cols=b, zero=zero)
    rational = all(isinstance(x, Fraction) for x in A.flat() + B.flat())
    if rational:
        g = pgcd(charpoly(A), charpoly(B))
        if len(g) > 1:
            raise CommonEigenvalue("characteristic polynomials share a factor")
    Ia = Matrix.identity(a, zero=A.zero)
    Ib = Matrix.identity(b, zero=A.zero)
    K = Ib.kron(A) - B.T.kron(Ia)
    # column-major vec: index c*a + r holds X[r][c]
    rhs = Matrix.column([-C.data[r][c] for c in range(b) for r in range(a)], zero=zero)
    if rank(K) < a * b:
        raise CommonEigenvalue("Sylvester operator is singular")
    x = solve_linear(K, rhs)
    return Matrix([[x.data[c * a + r][0] for c in range(b)] for r in range(a)], cols=b, zero=zero)
