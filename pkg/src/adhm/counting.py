"""Exhaustive F_p point counts of moment-map zero fibres.

Every count is exact.  Quadratic maps are evaluated on integer arrays and
reduced mod p; sums of several copies are counted by convolving value
histograms.  Work is split into disjoint index ranges, so totals do not depend
on the number of workers.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .current import (CurrentVec, claimed_fiber, claimed_fiber_coords, quadratic_forms,
                      residue_gram, stratum_data, SL2_BASIS, CurrentMat)
from .datum import hyperbolic_plus_unit, standard_symplectic
from .errors import SetMismatch, Unsupported
from .linalg import GF, Matrix, kernel_vectors

SO3_PRIMES = (3, 5, 7, 11)
SMALL_PRIMES = (3, 5, 7)


@dataclass
class CountReport:
    kind: str
    params: dict
    prime: int
    count: int
    predicted_dim: int | None
    elapsed: float
    workers: int = 1
    chunks: int = 1
    extra: dict = field(default_factory=dict)

    @property
    def log_count(self) -> float:
        return math.log(self.count) / math.log(self.prime)

    def to_json(self) -> dict:
        out = asdict(self)
        out["log_p_count"] = self.log_count
        return out


def log_slope(reports: list[CountReport]) -> float:
    """Slope of log(count) against log(p) between the two largest primes."""
    a, b = sorted(reports, key=lambda r: r.prime)[-2:]
    return math.log(b.count / a.count) / math.log(b.prime / a.prime)


def _check_prime(p: int, allowed) -> None:
    GF(p)
    if p not in allowed:
        raise Unsupported(f"prime {p} is outside the supported set {sorted(allowed)}")


def _grid(p: int, n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows = base-p digit vectors of the integers in [start, stop), most significant first."""
    stop = p ** n if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), n), dtype=np.int64)
    for c in range(n - 1, -1, -1):
        out[:, c] = idx % p
        idx //= p
    return out


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(a, min(a + step, total)) for a in range(0, total, step)]


def _run(fn, tasks: list, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, *zip(*tasks)))


def _encode(values: np.ndarray, p: int) -> np.ndarray:
    w = p ** np.arange(values.shape[1], dtype=np.int64)
    return (values % p) @ w


def _histogram(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.unique(keys, return_counts=True)


def _lookup(vals: np.ndarray, cnts: np.ndarray, keys: np.ndarray) -> np.ndarray:
    pos = np.searchsorted(vals, keys)
    pos = np.minimum(pos, len(vals) - 1)
    hit = vals[pos] == keys
    return np.where(hit, cnts[pos], 0)


# ---------------------------------------------------------------------------
# SO(3) data: (B1, B2, i) with B self-adjoint for J on V, W = F_p^3


def self_adjoint_basis(k: int) -> list[Matrix]:
    """Integer basis of p(V) = {B : B^T J = J B} for the standard symplectic J."""
    J = standard_symplectic(k).gram
    n = k * k
    eqs = []
    for a in range(k):
        for b in range(k):
            row = [Fraction(0)] * n
            for c in range(k):
                row[c * k + a] += J[c, b]     # (B^T J)_{ab}
                row[c * k + b] -= J[a, c]     # (J B)_{ab}
            eqs.append(row)
    return [Matrix([v[r * k:(r + 1) * k] for r in range(k)]) for v in kernel_vectors(Matrix(eqs, cols=n))]


def _so3_setup(k: int):
    P = np.array([[[int(x) for x in row] for row in B.data] for B in self_adjoint_basis(k)], dtype=np.int64)
    G = hyperbolic_plus_unit()
    Ginv = np.array([[int(x) for x in r] for r in G.inverse_gram.data], dtype=np.int64)
    J = np.array([[int(x) for x in r] for r in standard_symplectic(k).gram.data], dtype=np.int64)
    return P, Ginv, J


def _so3_i_histogram(k: int, p: int):
    P, Ginv, J = _so3_setup(k)
    iv = _grid(p, 3 * k).reshape(-1, k, 3)
    M = np.einsum("nab,bc,ndc,de->nae", iv, Ginv, iv, J) % p      # i G^-1 i^T J
    return _histogram(_encode(M.reshape(len(iv), -1), p))


def _so3_chunk(k: int, p: int, start: int, stop: int, vals, cnts) -> int:
    P, _, _ = _so3_setup(k)
    m = len(P)
    coeffs = _grid(p, 2 * m, start, stop)
    B1 = np.einsum("na,abc->nbc", coeffs[:, :m], P)
    B2 = np.einsum("na,abc->nbc", coeffs[:, m:], P)
    C = (B1 @ B2 - B2 @ B1) % p
    keys = _encode((-C).reshape(len(C), -1), p)
    return int(_lookup(vals, cnts, keys).sum())


def count_so3_fiber(k: int, p: int, workers: int = 1, allow_long: bool = False) -> CountReport:
    """#{(B1, B2, i) : B self-adjoint, [B1, B2] + i i^* = 0} over F_p."""
    if k not in (2, 4):
        raise Unsupported("k must be 2 or 4")
    if k == 4 and not allow_long:
        raise Unsupported("k = 4 is a long run; pass allow_long=True")
    _check_prime(p, SO3_PRIMES)
    t0 = time.perf_counter()
    vals, cnts = _so3_i_histogram(k, p)
    m = len(self_adjoint_basis(k))
    total = p ** (2 * m)
    tasks = [(k, p, a, b, vals, cnts) for a, b in _ranges(total, 4 * max(workers, 1))]
    count = sum(_run(_so3_chunk, tasks, workers))
    return CountReport("so3", {"k": k}, p, count, (k * k + 3 * k) // 2,
                       time.perf_counter() - t0, workers, len(tasks))


# ---------------------------------------------------------------------------
# three copies of V_d under the full g_d moment map


def _full_forms(d: int) -> np.ndarray:
    """Integer S_a with v^T S_a v = (xi_a v, v) for xi_a running over E z^m, F z^m, H z^m."""
    n = 2 * (d + 1)
    G = residue_gram(d)
    forms = []
    for m in range(d + 1):
        for M in SL2_BASIS:
            xi = CurrentMat.monomial(d, M, m)
            A = Matrix.from_columns([xi.act(CurrentVec.from_flat(d, [int(a == b) for a in range(n)])).flat()
                                     for b in range(n)], rows=n)
            forms.append(A.T @ G)
    return np.array([[[int(x) for x in r] for r in S.data] for S in forms], dtype=np.int64)


def _mu_values(forms: np.ndarray, vs: np.ndarray, p: int) -> np.ndarray:
    inv2 = pow(2, -1, p)
    q = np.einsum("ni,aij,nj->na", vs, forms, vs)
    return (q % p) * inv2 % p


def _homw_chunk(d: int, p: int, start: int, stop: int, vals: np.ndarray, cnts: np.ndarray) -> int:
    """Sum over a in vals[start:stop] of h(a) * sum_b h(b) h(-a-b)."""
    m = 3 * (d + 1)
    digits = (vals[:, None] // p ** np.arange(m, dtype=np.int64)) % p
    w = p ** np.arange(m, dtype=np.int64)
    total = 0
    for a in range(start, stop):
        keys = ((-(digits[a][None, :] + digits)) % p) @ w
        total += int(cnts[a]) * int((cnts * _lookup(vals, cnts, keys)).sum())
    return total


HOMW_PRIMES = {0: (3, 5, 7, 11), 1: (3, 5, 7), 2: (3, 5, 7)}


def homw_predicted(d: int) -> int:
    """The closed form 4d - 2 floor(d/2) + 3."""
    return 4 * d - 2 * (d // 2) + 3


def _homw_fourier(mu: np.ndarray, p: int) -> int:
    """Triples summing to zero via a DFT over F_p^m: N = p^-m sum over characters of H^3."""
    m = mu.shape[1]
    h = np.zeros((p,) * m, dtype=np.float64)
    np.add.at(h, tuple(mu.T), 1.0)
    H = np.fft.rfftn(h)
    del h
    cube = H * H * H
    total = (cube[..., 0].real.sum() + 2 * cube[..., 1:].real.sum()) / p ** m
    count = round(total)
    if abs(total - count) > 1e-3:
        raise ArithmeticError(f"Fourier count {total} is not close to an integer")
    return int(count)


def count_homw_fiber(d: int, p: int, workers: int = 1, allow_long: bool = False,
                     method: str = "histogram") -> CountReport:
    """#{(v1, v2, v3) in V_d^3 : mu(v1) + mu(v2) + mu(v3) = 0 in g_d^dual} over F_p.

    ``method="fourier"`` replaces the histogram convolution by a floating-point
    DFT over F_p^{3(d+1)} rounded to the nearest integer (guarded); it is what
    makes d = 2 at p = 7 feasible.
    """
    if d not in HOMW_PRIMES:
        raise Unsupported("d must be 0, 1 or 2")
    _check_prime(p, HOMW_PRIMES[d])
    if method not in ("histogram", "fourier"):
        raise Unsupported(f"unknown counting method {method!r}")
    if d == 2 and p == 7 and method == "histogram" and not allow_long:
        raise Unsupported("d = 2 at p = 7 is a long run; use method='fourier' or pass allow_long=True")
    t0 = time.perf_counter()
    forms = _full_forms(d)
    vs = _grid(p, 2 * (d + 1))
    mu = _mu_values(forms, vs, p)
    if method == "fourier":
        count = _homw_fourier(mu, p)
        return CountReport("homw", {"d": d, "method": method}, p, count, homw_predicted(d),
                           time.perf_counter() - t0, 1, 1)
    vals, cnts = _histogram(_encode(mu, p))
    tasks = [(d, p, a, b, vals, cnts) for a, b in _ranges(len(vals), 8 * max(workers, 1))]
    count = sum(_run(_homw_chunk, tasks, workers))
    return CountReport("homw", {"d": d, "method": method}, p, count, homw_predicted(d),
                       time.perf_counter() - t0, workers, len(tasks), {"distinct_values": int(len(vals))})


# ---------------------------------------------------------------------------
# mu_x fibres


def _mux_chunk(d: int, n: int, p: int, start: int, stop: int) -> tuple[int, int]:
    x = CurrentVec.basis(d, n, 0) if n <= d else CurrentVec.zero(d)
    forms = np.array([[[int(c) for c in r] for r in S.data] for S in quadratic_forms(x)], dtype=np.int64)
    vs = _grid(p, 2 * (d + 1), start, stop)
    zero = ~_mu_values(forms, vs, p).any(axis=1)
    keep = claimed_fiber_coords(d, n)
    outside = [c for c in range(2 * (d + 1)) if c not in keep]
    claimed = ~vs[:, outside].any(axis=1) if outside else np.ones(len(vs), dtype=bool)
    return int(zero.sum()), int((zero != claimed).sum())


def count_mux_fiber(d: int, n: int, p: int, workers: int = 1) -> CountReport:
    """Solutions of mu_x(v) = 0 for x = e1 z^n, checked against the claimed linear fibre."""
    if not 0 <= d <= 3:
        raise Unsupported("d must lie in [0, 3]")
    if not 0 <= n <= d + 1:
        raise Unsupported(f"n must lie in [0, {d + 1}]")
    _check_prime(p, SMALL_PRIMES)
    t0 = time.perf_counter()
    total = p ** (2 * (d + 1))
    tasks = [(d, n, p, a, b) for a, b in _ranges(total, 4 * max(workers, 1))]
    results = _run(_mux_chunk, tasks, workers)
    count = sum(r[0] for r in results)
    mismatches = sum(r[1] for r in results)
    dim = claimed_fiber(d, n).dim
    report = CountReport("mux", {"d": d, "n": n}, p, count, dim, time.perf_counter() - t0, workers,
                         len(tasks), {"claimed_size": p ** dim, "mismatches": mismatches})
    if mismatches or count != p ** dim:
        raise SetMismatch(f"zero set of mu_x differs from the claimed fibre in {mismatches} points")
    return report


# ---------------------------------------------------------------------------
# dimension formula


@dataclass
class DimFormulaReport:
    d: int
    strata: list[dict]
    predicted: int
    closed_form: int
    counts: list[CountReport]
    slope: float | None

    @property
    def agrees(self) -> bool:
        return self.slope is not None and abs(self.slope - self.predicted) <= 0.5

    def to_json(self) -> dict:
        return {"d": self.d, "strata": self.strata, "predicted": self.predicted,
                "closed_form": self.closed_form, "slope": self.slope, "agrees": self.agrees,
                "counts": [c.to_json() for c in self.counts]}


def dim_formula_prediction(d: int) -> tuple[int, list[dict]]:
    """max over strata of (stratum - orbit) + dim V_d + dim of the mu_x fibre at x = e1 z^n."""
    strata = []
    for n in range(d + 2):
        x = CurrentVec.basis(d, n, 0) if n <= d else CurrentVec.zero(d)
        _, orbit, stratum = stratum_data(x)
        fiber = claimed_fiber(d, n).dim
        strata.append({"n": n, "orbit_dim": orbit, "stratum_dim": stratum, "fiber_dim": fiber,
                       "total": stratum - orbit + 2 * (d + 1) + fiber})
    return max(s["total"] for s in strata), strata


def verify_dim_formula(d: int, primes=None, workers: int = 1) -> DimFormulaReport:
    if not 0 <= d <= 2:
        raise Unsupported("d must lie in [0, 2]")
    predicted, strata = dim_formula_prediction(d)
    primes = primes or (3, 5, 7)
    counts = [count_homw_fiber(d, p, workers, method="fourier" if (d, p) == (2, 7) else "histogram")
              for p in primes]
    slope = log_slope(counts) if len(counts) >= 2 else None
    return DimFormulaReport(d, strata, predicted, homw_predicted(d), counts, slope)
