import itertools
import math
from collections import Counter

import pytest

from adhm.counting import (count_homw_fiber, count_mux_fiber, count_so3_fiber,
                           dim_formula_prediction, homw_predicted, log_slope, self_adjoint_basis,
                           verify_dim_formula)
from adhm.current import (SL2_BASIS, CurrentMat, CurrentVec, claimed_fiber_coords, residue_form,
                          stabilizer)
from adhm.errors import Unsupported
from adhm.linalg import Matrix


# -- brute-force oracles (plain integers, no numpy) ------------------------------------------

def so3_k2_oracle(p):
    """k = 2: B1, B2 are scalars, so count p^2 * #{i in F_p^(2x3) : i G^-1 i^T = 0}."""
    Ginv = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    hits = 0
    for flat in itertools.product(range(p), repeat=6):
        i = (flat[:3], flat[3:])
        ok = True
        for a in range(2):
            for b in range(a, 2):
                s = sum(i[a][u] * Ginv[u][w] * i[b][w] for u in range(3) for w in range(3))
                if s % p:
                    ok = False
        hits += ok
    return p * p * hits


def _mu_mod_p(v, p):
    """(xi v, v) over the monomial basis of g_d, reduced mod p (the factor 1/2 is a unit)."""
    d = v.d
    return tuple(int(residue_form(CurrentMat.monomial(d, M, m).act(v), v)) % p
                 for m in range(d + 1) for M in SL2_BASIS)


def homw_oracle(d, p):
    """Count triples by a dictionary convolution of moment-map values."""
    n = 2 * (d + 1)
    vals = Counter(_mu_mod_p(CurrentVec.from_flat(d, flat), p)
                   for flat in itertools.product(range(p), repeat=n))
    pairs = Counter()
    for a, ca in vals.items():
        for b, cb in vals.items():
            pairs[tuple((x + y) % p for x, y in zip(a, b))] += ca * cb
    return sum(c * pairs.get(tuple((-x) % p for x in a), 0) for a, c in vals.items())


def mux_oracle(d, n, p):
    x = CurrentVec.basis(d, n, 0) if n <= d else CurrentVec.zero(d)
    els = stabilizer(x).elements
    keep = set(claimed_fiber_coords(d, n))
    zero, claimed = set(), set()
    for flat in itertools.product(range(p), repeat=2 * (d + 1)):
        v = CurrentVec.from_flat(d, flat)
        if all(int(residue_form(xi.act(v), v)) % p == 0 for xi in els):
            zero.add(flat)
        if all(c == 0 for k, c in enumerate(flat) if k not in keep):
            claimed.add(flat)
    return zero, claimed


# -- oracles against the fast counters --------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5])
def test_so3_matches_oracle(p):
    assert count_so3_fiber(2, p).count == so3_k2_oracle(p)


@pytest.mark.parametrize("d,p", [(0, 3), (0, 5), (0, 7), (1, 3)])
def test_homw_matches_oracle(d, p):
    assert count_homw_fiber(d, p).count == homw_oracle(d, p)


@pytest.mark.parametrize("d,n,p", [(0, 0, 5), (1, 0, 3), (1, 1, 3), (1, 2, 3), (2, 0, 3), (2, 3, 3)])
def test_mux_matches_oracle(d, n, p):
    zero, claimed = mux_oracle(d, n, p)
    assert zero == claimed
    assert count_mux_fiber(d, n, p).count == len(zero)


def test_self_adjoint_basis():
    from adhm.datum import standard_symplectic
    for k in (2, 4):
        J = standard_symplectic(k).gram
        basis = self_adjoint_basis(k)
        assert len(basis) == k * (k - 1) // 2
        for B in basis:
            assert B.T @ J == J @ B
    (B,) = self_adjoint_basis(2)
    assert B == Matrix.identity(2).scale(B[0, 0])


# -- golden values ------------------------------------------------------------------------------

GOLDEN_HOMW = {(0, 3): 33, (0, 5): 145, (0, 7): 385, (0, 11): 1441,
               (1, 3): 3321, (1, 5): 105625, (1, 7): 1039633,
               (2, 3): 94041, (2, 5): 13515625}
GOLDEN_SO3 = {3: 297, 5: 3625, 7: 18865, 11: 174361}


@pytest.mark.parametrize("key", sorted(GOLDEN_HOMW))
def test_homw_golden(key):
    assert count_homw_fiber(*key).count == GOLDEN_HOMW[key]


@pytest.mark.parametrize("p", sorted(GOLDEN_SO3))
def test_so3_golden(p):
    r = count_so3_fiber(2, p)
    assert r.count == GOLDEN_SO3[p] and r.predicted_dim == 5
    assert r.count >= p ** 5 / 4


@pytest.mark.parametrize("p", [3, 5, 7])
def test_so3_is_scalars_times_homw_degree_zero(p):
    # at k = 2 the B's are scalars and i i^* = 0 is the d = 0 equation on three vectors
    assert count_so3_fiber(2, p).count == p * p * count_homw_fiber(0, p).count


@pytest.mark.parametrize("d,p", [(0, 5), (1, 5), (2, 3), (2, 5)])
def test_fourier_method_agrees(d, p):
    assert count_homw_fiber(d, p, method="fourier").count == count_homw_fiber(d, p).count


def test_mux_examples():
    assert count_mux_fiber(0, 0, 5).count == 5
    assert count_mux_fiber(1, 0, 3).count == 27
    for p in (3, 5):
        assert count_mux_fiber(1, 2, p).count == p ** 2


# -- partitioning --------------------------------------------------------------------------------

@pytest.mark.parametrize("workers", [1, 4, 8])
def test_worker_count_does_not_change_totals(workers):
    assert count_homw_fiber(1, 5, workers=workers).count == GOLDEN_HOMW[(1, 5)]
    assert count_so3_fiber(2, 5, workers=workers).count == GOLDEN_SO3[5]
    assert count_mux_fiber(1, 1, 3, workers=workers).count == 9


def test_reruns_are_identical():
    a, b = count_homw_fiber(1, 3), count_homw_fiber(1, 3)
    assert a.count == b.count and a.extra == b.extra


# -- gating and parameters ----------------------------------------------------------------------

def test_gates():
    with pytest.raises(Unsupported):
        count_so3_fiber(4, 3)
    with pytest.raises(Unsupported):
        count_so3_fiber(3, 3)
    with pytest.raises(Unsupported):
        count_homw_fiber(2, 7)
    with pytest.raises(Unsupported):
        count_homw_fiber(3, 3)
    with pytest.raises(Unsupported):
        count_mux_fiber(1, 3, 3)
    with pytest.raises(Unsupported):
        count_mux_fiber(1, 0, 11)
    with pytest.raises(ValueError):
        count_homw_fiber(0, 2)


# -- slopes and the dimension formula ---------------------------------------------------------

def test_log_slope():
    from adhm.counting import CountReport
    reps = [CountReport("x", {}, p, p ** 4, 4, 0.0) for p in (3, 5, 7)]
    assert math.isclose(log_slope(reps), 4)


def test_closed_form():
    assert [homw_predicted(d) for d in range(3)] == [3, 7, 9]


def test_stratum_prediction():
    assert [dim_formula_prediction(d)[0] for d in range(4)] == [3, 7, 10, 14]
    # the generic stratum dominates: fibre dimension floor(d/2) + 1 + 2(d - floor(d/2))
    for d in range(4):
        best = max(dim_formula_prediction(d)[1], key=lambda s: s["total"])
        assert best["n"] == 0 and best["fiber_dim"] == d // 2 + 1 + 2 * (d - d // 2)


@pytest.mark.parametrize("d", [0, 1])
def test_dim_formula_small_degrees(d):
    rep = verify_dim_formula(d)
    assert rep.agrees and rep.predicted == rep.closed_form
    assert round(rep.slope) == rep.predicted
