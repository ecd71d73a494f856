"""Seeded generators of regular ADHM data in the zero fibre of the moment map.

All generators start from a diagonal B1 with distinct small integer
eigenvalues and solve the moment-map equation for the off-diagonal part of B2,
then conjugate by a random group element so that nothing stays diagonal.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .datum import (AdhmDatum, SoDatum, act, is_regular, standard_orthogonal,
                    standard_symplectic)
from .linalg import Matrix, inverse, is_invertible


def _rand_q(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def _distinct_eigenvalues(rng: random.Random, k: int, spread: int = 6) -> list[Fraction]:
    return [Fraction(v) for v in rng.sample(range(-spread, spread + 1), k)]


def random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        g = Matrix([[_rand_q(rng, -2, 2) for _ in range(n)] for _ in range(n)])
        if is_invertible(g):
            return g


def random_orthogonal(rng: random.Random, n: int) -> Matrix:
    """Rational orthogonal matrix via the Cayley transform of an antisymmetric S."""
    S = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            v = _rand_q(rng, -2, 2)
            S[a][b], S[b][a] = v, -v
    S = Matrix(S, cols=n)
    I = Matrix.identity(n)
    return (I - S) @ inverse(I + S)


def random_gl_datum(rng: random.Random, k: int, N: int, conjugate: bool = True,
                    max_tries: int = 200) -> AdhmDatum:
    """Regular GL datum with [B1, B2] + ij = 0 and B1 split with distinct eigenvalues."""
    for _ in range(max_tries):
        lam = _distinct_eigenvalues(rng, k)
        j_cols = [[_rand_q(rng) for _ in range(N)] for _ in range(k)]
        i_rows = []
        for f in j_cols:
            row = [_rand_q(rng) for _ in range(N)]
            # force i_l(f_l) = 0 by adjusting one coordinate where f_l is nonzero
            piv = next((c for c in range(N) if f[c]), None)
            if piv is not None:
                s = sum(r * c for r, c in zip(row, f))
                row[piv] -= s / f[piv]
            i_rows.append(row)
        i = Matrix(i_rows, cols=N)
        j = Matrix.from_columns(j_cols, rows=N) if k else Matrix.zeros(N, 0)
        ij = i @ j
        B2 = [[Fraction(0)] * k for _ in range(k)]
        for a in range(k):
            for b in range(k):
                B2[a][b] = -ij[a, b] / (lam[a] - lam[b]) if a != b else _rand_q(rng)
        x = AdhmDatum(Matrix.diag(lam, zero=Fraction(0)) if k else Matrix.zeros(0, 0),
                      Matrix(B2, cols=k), i, j)
        if not is_regular(x):
            continue
        if conjugate and k:
            x = act(random_invertible(rng, k), x)
        return x
    raise RuntimeError("could not draw a regular datum")


def random_usp_datum(rng: random.Random, k: int, N: int, conjugate: bool = True,
                     max_tries: int = 200) -> SoDatum:
    """Regular datum with V = Q^k orthogonal (identity form) and W = Q^N symplectic."""
    formV = standard_orthogonal(k)
    formW = standard_symplectic(N)
    Jinv = inverse(formW.gram)
    for _ in range(max_tries):
        lam = _distinct_eigenvalues(rng, k)
        i = Matrix([[_rand_q(rng) for _ in range(N)] for _ in range(k)], cols=N)
        M = i @ Jinv @ i.T
        B2 = [[Fraction(0)] * k for _ in range(k)]
        for a in range(k):
            for b in range(a, k):
                if a == b:
                    B2[a][a] = _rand_q(rng)
                else:
                    v = -M[a, b] / (lam[a] - lam[b])
                    B2[a][b] = B2[b][a] = v
        y = SoDatum(Matrix.diag(lam), Matrix(B2, cols=k), i, formV, formW)
        if not is_regular(y):
            continue
        if conjugate and k:
            y = act(random_orthogonal(rng, k), y)
            # the Cayley matrix is orthogonal, so the form on V is unchanged
            assert y.formV == formV
        return y
    raise RuntimeError("could not draw a regular datum")


def random_so_datum(rng: random.Random, k: int, formW, lo: int = -3, hi: int = 3) -> SoDatum:
    """Random (not necessarily zero-fibre) datum with V = Q^k symplectic, W orthogonal."""
    formV = standard_symplectic(k)
    h = k // 2

    def antisym(n):
        m = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                v = _rand_q(rng, lo, hi)
                m[a][b], m[b][a] = v, -v
        return Matrix(m, cols=n)

    def p_elem():
        # self-adjoint for J = [[0, I], [-I, 0]]: [[A, S], [T, A^T]] with S, T antisymmetric
        A = Matrix([[_rand_q(rng, lo, hi) for _ in range(h)] for _ in range(h)], cols=h)
        return Matrix.block([[A, antisym(h)], [antisym(h), A.T]])

    i = Matrix([[_rand_q(rng, lo, hi) for _ in range(formW.dim)] for _ in range(k)], cols=formW.dim)
    return SoDatum(p_elem(), p_elem(), i, formV, formW)
