import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adhm.current import (E, F, H, CurrentMat, CurrentVec, action_matrix, claimed_fiber,
                          claimed_fiber_coords, generic_nilpotent_embedding, min_deg, mu_x_eval,
                          orbit_tangent_rank, quadratic_forms, residue_form, residue_gram,
                          stabilizer, stratum_data)
from adhm.linalg import Matrix, det, kernel_basis, rank


def e1(d, m=0):
    return CurrentVec.basis(d, m, 0)


def e2(d, m=0):
    return CurrentVec.basis(d, m, 1)


def random_vec(rng, d, n):
    """Random x with min.deg exactly n (x = 0 when n = d + 1)."""
    flat = [Fraction(0)] * (2 * (d + 1))
    if n <= d:
        while not (flat[2 * n] or flat[2 * n + 1]):
            flat[2 * n], flat[2 * n + 1] = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        for a in range(2 * n + 2, len(flat)):
            flat[a] = Fraction(rng.randint(-3, 3))
    return CurrentVec.from_flat(d, flat)


def vecs(max_d=4):
    return st.integers(0, max_d).flatmap(
        lambda d: st.lists(st.integers(-3, 3), min_size=2 * (d + 1), max_size=2 * (d + 1))
        .map(lambda fl: CurrentVec.from_flat(d, fl)))


# -- residue form ------------------------------------------------------------------

def test_residue_form_examples():
    for d in range(5):
        assert residue_form(e1(d, d), e2(d)) == 1
        assert residue_form(e2(d), e1(d, d)) == -1
    assert residue_form(e1(3, 1), e2(3, 1)) == 0


@given(vecs())
def test_residue_form_alternating(f):
    assert residue_form(f, f) == 0


@pytest.mark.parametrize("d", range(7))
def test_residue_gram_nondegenerate(d):
    G = residue_gram(d)
    assert det(G) != 0 and G.T == -G


def test_residue_gram_matches_pairing():
    d = 2
    basis = [CurrentVec.basis(d, m, c) for m in range(d + 1) for c in range(2)]
    G = residue_gram(d)
    for a, u in enumerate(basis):
        for b, w in enumerate(basis):
            assert G[a, b] == residue_form(u, w)


def test_mismatched_degrees():
    with pytest.raises(ValueError):
        residue_form(e1(1), e1(2))


# -- minimal degree ----------------------------------------------------------------

def test_min_deg():
    assert min_deg(CurrentVec.zero(3)) == 4
    assert min_deg(e1(3)) == 0
    assert min_deg(e2(4, 3)) == 3


def test_current_mat_action_is_polynomial_multiplication():
    d = 3
    xi = CurrentMat.monomial(d, E, 1)
    assert xi.act(e2(d, 0)) == e1(d, 1)
    assert xi.act(e2(d, 3)).is_zero()   # z^4 = 0
    assert CurrentMat.monomial(d, H, 2).act(e2(d, 1)) == e2(d, 3).scale(-1)
    assert CurrentMat.monomial(d, F, 0).act(e1(d, 2)) == e2(d, 2)


def test_current_json_roundtrip():
    v = CurrentVec.from_flat(2, [1, "1/2", 0, -3, 2, 0])
    assert CurrentVec.from_json(v.to_json()) == v


# -- stabilizers ---------------------------------------------------------------------

def test_stabilizer_of_zero():
    for d in range(4):
        assert stabilizer(CurrentVec.zero(d)).dim == 3 * (d + 1)


@pytest.mark.parametrize("d", range(5))
def test_stabilizer_of_e1_is_polynomials_times_e(d):
    st_ = stabilizer(e1(d))
    assert st_.dim == d + 1
    expected = [CurrentMat.monomial(d, E, m).flat() for m in range(d + 1)]
    assert st_.span() == kernel_basis(action_matrix(e1(d)))
    from adhm.linalg import Subspace
    assert st_.span() == Subspace(3 * (d + 1), expected)


@pytest.mark.parametrize("d", range(1, 6))
def test_stabilizer_of_top_degree(d):
    assert stabilizer(e1(d, d)).dim == 1 + 3 * d


@pytest.mark.parametrize("d", range(7))
def test_stabilizer_dimension_formula_random(d):
    rng = random.Random(d)
    for n in range(d + 2):
        for _ in range(8):
            x = random_vec(rng, d, n)
            s = stabilizer(x, check=True)
            assert s.dim == (d + 1 - n) + 3 * n
            if n <= d:
                assert s.xi.min_deg() == 0
            for el in s.elements:
                assert el.act(x).is_zero()


@given(vecs(3))
@settings(max_examples=60)
def test_stabilizer_equals_kernel(x):
    s = stabilizer(x, check=False)
    assert s.span() == kernel_basis(action_matrix(x))
    assert s.span().dim == s.dim


# -- strata -------------------------------------------------------------------------------

def test_stratum_examples():
    assert stratum_data(e1(2)) == (0, 6, 6)
    assert stratum_data(CurrentVec.zero(3)) == (4, 0, 0)
    assert stratum_data(e2(1, 1)) == (1, 2, 2)


@pytest.mark.parametrize("d", range(5))
def test_orbit_rank_depends_only_on_min_deg(d):
    rng = random.Random(100 + d)
    for n in range(d + 2):
        ref = orbit_tangent_rank(e1(d, n)) if n <= d else 0
        assert ref == 2 * (d + 1 - n)
        assert orbit_tangent_rank(random_vec(rng, d, n)) == ref


# -- mu_x -----------------------------------------------------------------------------

def test_mu_x_zero_vector():
    assert all(v == 0 for v in mu_x_eval(e1(2), CurrentVec.zero(2)))


def test_mu_x_b_squared():
    for a, b in ((1, 0), (0, 1), (2, 3), (-1, 5)):
        v = CurrentVec(0, ((a, b),))
        assert mu_x_eval(e1(0), v) == [Fraction(b * b, 2)]


@given(vecs(3), st.integers(-4, 4))
@settings(max_examples=40)
def test_mu_x_quadratic_scaling(v, c):
    x = e1(v.d, min(1, v.d))
    assert mu_x_eval(x, v.scale(c)) == [c * c * q for q in mu_x_eval(x, v)]


@given(vecs(3))
@settings(max_examples=40)
def test_quadratic_forms_agree_with_direct_evaluation(v):
    x = e1(v.d)
    forms = quadratic_forms(x)
    col = Matrix.column(v.flat())
    assert [(col.T @ S @ col)[0, 0] / 2 for S in forms] == mu_x_eval(x, v)


def _bracket_pairing(xi, eta, v):
    """1/2 ([xi, eta] v, v)."""
    lhs = xi.act(eta.act(v)) + eta.act(xi.act(v)).scale(-1)
    return residue_form(lhs, v) / 2


@given(vecs(3))
@settings(max_examples=40)
def test_differential_along_orbit_identity(v):
    # (xi v, eta v) = 1/2 ([xi, eta] v, v) for xi, eta in sp(V_d)
    x = e1(v.d)
    els = stabilizer(x).elements
    for xi in els:
        for eta in els:
            assert residue_form(xi.act(v), eta.act(v)) == _bracket_pairing(xi, eta, v)


@pytest.mark.parametrize("d", range(4))
def test_fiber_is_invariant_at_tangent_level(d):
    rng = random.Random(d)
    for n in range(d + 2):
        x = e1(d, n) if n <= d else CurrentVec.zero(d)
        els = stabilizer(x).elements
        idx = claimed_fiber_coords(d, n)
        for _ in range(5):
            flat = [Fraction(0)] * (2 * (d + 1))
            for a in idx:
                flat[a] = Fraction(rng.randint(-3, 3))
            v = CurrentVec.from_flat(d, flat)
            assert all(q == 0 for q in mu_x_eval(x, v))
            for xi in els:
                for eta in els:
                    assert residue_form(xi.act(v), eta.act(v)) == 0


# -- claimed fibre -------------------------------------------------------------------------

def test_claimed_fiber_examples():
    assert claimed_fiber(0, 0).dim == 1 and claimed_fiber(0, 0).contains(e1(0).flat())
    F1 = claimed_fiber(1, 0)
    assert F1.dim == 3
    for v in (e1(1), e1(1, 1), e2(1, 1)):
        assert F1.contains(v.flat())
    F23 = claimed_fiber(2, 3)
    assert F23.dim == 2 and F23.contains(e1(2, 2).flat()) and F23.contains(e2(2, 2).flat())


def test_claimed_fiber_range():
    with pytest.raises(ValueError):
        claimed_fiber(2, 4)


@pytest.mark.parametrize("d", range(5))
def test_claimed_fiber_contained_in_zero_set(d):
    for n in range(d + 2):
        x = e1(d, n) if n <= d else CurrentVec.zero(d)
        for v in claimed_fiber(d, n).vectors():
            assert all(q == 0 for q in mu_x_eval(x, CurrentVec.from_flat(d, v)))


# -- nilpotent embedding -------------------------------------------------------------------

def test_embedding_degree_zero():
    emb = generic_nilpotent_embedding(0)
    assert emb.B.is_zero() and len(emb.images) == 3


@pytest.mark.parametrize("d", range(1, 5))
def test_embedding_jordan_type(d):
    emb = generic_nilpotent_embedding(d)
    assert len(emb.images) == 3 * (d + 1)
    assert rank(emb.B @ emb.B) == 2 * (d + 1) - 4
    assert rank(emb.B) == 2 * d


def test_embedding_is_lie_homomorphism():
    d = 2
    emb = generic_nilpotent_embedding(d)
    xi, eta = CurrentMat.monomial(d, E, 1), CurrentMat.monomial(d, F, 0)
    X, Y = emb.embed(xi), emb.embed(eta)
    # [E z, F] = H z
    assert X @ Y - Y @ X == emb.embed(CurrentMat.monomial(d, H, 1))
    assert X.T @ emb.gram + emb.gram @ X == Matrix.zeros(6, 6)
