"""Exact dense linear algebra over Q, F_p and Q(t)."""

from .matrix import Matrix, qmat, vec
from .scalars import GF, Fp, RatFunc
from .solve import (charpoly, det, inverse, is_invertible, kernel_vectors, poly_gcd, rank,
                    rational_roots, rref, solve_linear, sylvester_solve)
from .subspace import Subspace, invariant_closure, kernel_basis

__all__ = [
    "Matrix", "qmat", "vec", "GF", "Fp", "RatFunc", "charpoly", "det", "inverse",
    "is_invertible", "kernel_vectors", "poly_gcd", "rank", "rational_roots", "rref",
    "solve_linear", "sylvester_solve", "Subspace", "invariant_closure", "kernel_basis",
]
