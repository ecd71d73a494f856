import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adhm.datum import (ALTERNATING, SYMMETRIC, AdhmDatum, BilinearForm, Partition, SoDatum, act,
                        adjoint_endo, adjoint_hom, b1_spectrum, compatible_form, direct_sum, dual,
                        hyperbolic_plus_unit, is_costable, is_regular, is_stable, lie_algebra_basis,
                        moment_map_gl, moment_map_sp, mu_cotangent, mu_vector, pairing,
                        same_functional, standard_orthogonal, standard_symplectic, translate_b1)
from adhm.errors import DimensionMismatch, InvariantViolation, NotSplitOverBase
from adhm.linalg import Matrix, qmat
from adhm.tensor import framed_sum
from adhm.samples import (random_gl_datum, random_invertible, random_orthogonal, random_so_datum,
                          random_usp_datum)

seeds = st.integers(0, 10_000)


def rand_matrix(rng, r, c):
    return Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(c)] for _ in range(r)], cols=c)


def rand_datum(rng, k, N):
    return AdhmDatum(rand_matrix(rng, k, k), rand_matrix(rng, k, k), rand_matrix(rng, k, N), rand_matrix(rng, N, k))


# -- forms and adjoints ----------------------------------------------------------

def test_form_validation():
    with pytest.raises(InvariantViolation):
        BilinearForm(SYMMETRIC, qmat([[0, 1], [-1, 0]]))
    with pytest.raises(InvariantViolation):
        BilinearForm(ALTERNATING, qmat([[0, 0], [0, 0]]))
    with pytest.raises(DimensionMismatch):
        standard_symplectic(3)


def test_adjoint_of_identity():
    J = standard_symplectic(2)
    assert adjoint_endo(Matrix.identity(2), J) == Matrix.identity(2)


def test_adjoint_swaps_diagonal_for_symplectic_plane():
    assert adjoint_endo(Matrix.diag([2, 7]), standard_symplectic(2)) == Matrix.diag([7, 2])


@given(seeds)
def test_adjoint_is_involution(seed):
    rng = random.Random(seed)
    B = rand_matrix(rng, 4, 4)
    for form in (standard_symplectic(4), standard_orthogonal(4)):
        assert adjoint_endo(adjoint_endo(B, form), form) == B


def test_adjoint_hom_zero():
    assert adjoint_hom(Matrix.zeros(2, 1), standard_orthogonal(1), standard_symplectic(2)).is_zero()


def test_adjoint_hom_pairing_identity():
    formV, formW = standard_symplectic(2), standard_orthogonal(1)
    i = qmat([[1], [0]])
    istar = adjoint_hom(i, formW, formV)
    for v in ([1, 0], [0, 1]):
        lhs = formV.pair(list(i.col(0)), v)
        rhs = formW.pair([1], list((istar @ Matrix.column(v)).col(0)))
        assert lhs == rhs


@given(seeds)
def test_adjoint_hom_of_isometry_action(seed):
    rng = random.Random(seed)
    formV, formW = standard_orthogonal(3), standard_symplectic(2)
    g = random_orthogonal(rng, 3)
    i = rand_matrix(rng, 3, 2)
    assert adjoint_hom(g @ i, formW, formV) == adjoint_hom(i, formW, formV) @ inverse_of(g)


def inverse_of(g):
    from adhm.linalg import inverse
    return inverse(g)


# -- moment maps -------------------------------------------------------------------

def test_moment_map_of_zero():
    assert moment_map_gl(AdhmDatum.zero(2, 3)).is_zero()


def test_moment_map_rank_one():
    x = AdhmDatum(qmat([[2]]), qmat([[5]]), qmat([[1, 3]]), qmat([[2], [4]]))
    assert moment_map_gl(x) == qmat([[14]])


@given(seeds)
@settings(max_examples=30)
def test_moment_map_equivariance(seed):
    rng = random.Random(seed)
    x = rand_datum(rng, 3, 2)
    g = random_invertible(rng, 3)
    from adhm.linalg import inverse
    assert moment_map_gl(act(g, x)) == g @ moment_map_gl(x) @ inverse(g)


@given(seeds)
@settings(max_examples=30)
def test_moment_map_sp_is_anti_self_adjoint(seed):
    rng = random.Random(seed)
    y = random_so_datum(rng, 4, hyperbolic_plus_unit())
    M = moment_map_sp(y)
    assert adjoint_endo(M, y.formV) == -M


def test_moment_map_sp_explicit_value():
    # V = Q^2 with J, W = Q^3 hyperbolic-plus-unit, B's scalar so only i i^* contributes
    formV, formW = standard_symplectic(2), hyperbolic_plus_unit()
    i = qmat([[1, 2, 0], [0, 1, 1]])
    y = SoDatum(Matrix.identity(2), Matrix.identity(2).scale(3), i, formV, formW)
    # i G_W^-1 i^T = [[4, 1], [1, 1]], then times J
    assert moment_map_sp(y) == qmat([[4, 1], [1, 1]]) @ formV.gram
    assert moment_map_sp(y) == qmat([[-1, 4], [-1, 1]])


def test_so_datum_rejects_non_self_adjoint():
    with pytest.raises(InvariantViolation):
        SoDatum(Matrix.diag([1, 2]), Matrix.identity(2), qmat([[1, 0, 0], [0, 1, 0]]),
                standard_symplectic(2), hyperbolic_plus_unit())


def test_so_datum_rejects_same_kind_forms():
    with pytest.raises(InvariantViolation):
        SoDatum(Matrix.identity(2), Matrix.identity(2), qmat([[1, 0], [0, 1]]),
                standard_orthogonal(2), standard_orthogonal(2))


@given(seeds)
@settings(max_examples=40)
def test_hom_moment_map_splits_into_cotangent_and_vector_parts(seed):
    # W = Q^3 with (e1, e2) = 1, (e3, e3) = 1; i = (i1 | i2 | i3)
    rng = random.Random(seed)
    formV, formW = standard_symplectic(4), hyperbolic_plus_unit()
    i = rand_matrix(rng, 4, 3)
    i1, i2, i3 = (Matrix.column(i.col(c)) for c in range(3))
    lhs = i @ adjoint_hom(i, formW, formV)
    i2_dual = i2.T @ formV.gram
    rhs = mu_cotangent(i1, i2_dual).scale(2) + mu_vector(i3, formV)
    assert same_functional(lhs, rhs, formV)
    # independent check: pair against an explicit basis of sp(V)
    for xi in lie_algebra_basis(formV):
        assert pairing(lhs, xi) == pairing(rhs, xi)


def test_vector_moment_map_normalization():
    # xi -> (v, xi v)_V: the raw half-form convention would give the opposite sign and half the size
    formV = standard_symplectic(2)
    v = Matrix.column([1, 2])
    for xi in lie_algebra_basis(formV):
        xv = list((xi @ v).col(0))
        assert pairing(mu_vector(v, formV), xi) == formV.pair(list(v.col(0)), xv)
        assert pairing(mu_vector(v, formV), xi) == -2 * (Fraction(1, 2) * formV.pair(xv, list(v.col(0))))


def test_lie_algebra_dimensions():
    assert len(lie_algebra_basis(standard_symplectic(4))) == 10
    assert len(lie_algebra_basis(standard_orthogonal(3))) == 3
    assert len(lie_algebra_basis(hyperbolic_plus_unit())) == 3


# -- stability --------------------------------------------------------------------

def test_surjective_i_is_stable():
    x = AdhmDatum(Matrix.zeros(2, 2), Matrix.zeros(2, 2), Matrix.identity(2), Matrix.zeros(2, 2))
    assert is_stable(x)
    assert not is_costable(x)


def test_j_zero_not_costable():
    rng = random.Random(3)
    x = AdhmDatum(rand_matrix(rng, 2, 2), rand_matrix(rng, 2, 2), rand_matrix(rng, 2, 3), Matrix.zeros(3, 2))
    assert not is_costable(x)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3), st.integers(1, 3))
def test_one_dimensional_regular(b1, b2, a, c):
    x = AdhmDatum(qmat([[b1]]), qmat([[b2]]), qmat([[a, 0]]), qmat([[0], [c]]))
    assert is_regular(x)


@given(seeds)
@settings(max_examples=30)
def test_costable_iff_dual_stable(seed):
    rng = random.Random(seed)
    x = rand_datum(rng, 3, 1)
    assert is_costable(x) == is_stable(dual(x))
    assert is_stable(x) == is_costable(dual(x))


@given(seeds)
@settings(max_examples=20)
def test_stability_preserved_by_action(seed):
    rng = random.Random(seed)
    x = rand_datum(rng, 3, 1)
    g = random_invertible(rng, 3)
    assert is_stable(act(g, x)) == is_stable(x)


# -- dual, action, translation -------------------------------------------------------

@given(seeds)
@settings(max_examples=30)
def test_double_dual_is_minus_identity_action(seed):
    rng = random.Random(seed)
    x = rand_datum(rng, 2, 3)
    assert dual(dual(x)) == AdhmDatum(x.B1, x.B2, -x.i, -x.j)
    assert dual(dual(x)) == act(Matrix.identity(2).scale(-1), x)
    assert moment_map_gl(dual(x)) == -moment_map_gl(x).T


def test_dual_of_zero():
    assert dual(AdhmDatum.zero(2, 1)) == AdhmDatum.zero(2, 1)


def test_act_identity():
    x = rand_datum(random.Random(1), 2, 2)
    assert act(Matrix.identity(2), x) == x


@given(seeds)
@settings(max_examples=20)
def test_isometry_action_preserves_so_invariants(seed):
    rng = random.Random(seed)
    y = random_usp_datum(rng, 3, 2, conjugate=False)
    g = random_orthogonal(rng, 3)
    z = act(g, y, check_isometry=True)
    assert z.formV == y.formV
    z.check_invariants()


def test_translate():
    rng = random.Random(5)
    x = random_gl_datum(rng, 2, 2)
    assert translate_b1(x, 0) == x
    y = translate_b1(x, Fraction(3))
    assert moment_map_gl(y) == moment_map_gl(x)
    assert b1_spectrum(y).eigenvalues == tuple(e + 3 for e in b1_spectrum(x).eigenvalues)


# -- direct sums and spectra ----------------------------------------------------------

def test_direct_sum_single():
    x = rand_datum(random.Random(2), 2, 2)
    assert direct_sum([x]) == x


@given(seeds)
@settings(max_examples=20)
def test_direct_sum_moment_map_blocks(seed):
    # shared W: diagonal blocks are the summands' moment maps, off-diagonal blocks are i_x j_y
    rng = random.Random(seed)
    x, y = rand_datum(rng, 2, 2), rand_datum(rng, 1, 2)
    M = moment_map_gl(direct_sum([x, y]))
    assert M.submatrix(range(2), range(2)) == moment_map_gl(x)
    assert M.submatrix(range(2, 3), range(2, 3)) == moment_map_gl(y)
    assert M.submatrix(range(2), range(2, 3)) == x.i @ y.j
    assert M.submatrix(range(2, 3), range(2)) == y.i @ x.j


def test_direct_sum_block_diagonal_when_cross_terms_vanish():
    x = AdhmDatum(qmat([[1]]), qmat([[2]]), qmat([[1, 0]]), qmat([[0], [0]]))
    y = AdhmDatum(qmat([[3]]), qmat([[4]]), qmat([[0, 0]]), qmat([[0], [5]]))
    assert moment_map_gl(direct_sum([x, y])) == Matrix.block_diag([moment_map_gl(x), moment_map_gl(y)])


def test_direct_sum_of_regular_with_disjoint_spectra():
    x = AdhmDatum(Matrix.diag([0, 1]), qmat([[0, 1], [-1, 0]]), qmat([[1, 0], [0, 1]]), qmat([[1, 0], [0, 1]]))
    y = AdhmDatum(Matrix.diag([5, 6]), qmat([[0, 2], [1, 0]]), qmat([[1, 1], [0, 1]]), qmat([[1, 0], [1, 1]]))
    assert is_regular(x) and is_regular(y)
    assert is_regular(direct_sum([x, y]))


@pytest.mark.parametrize("seed", range(4))
def test_framed_sum_stays_in_zero_fibre(seed):
    rng = random.Random(seed)
    a, b = random_gl_datum(rng, 2, 2), random_gl_datum(rng, 1, 2)
    s = framed_sum(a, b)
    assert moment_map_gl(s).is_zero() and s.dimW == 4
    assert is_regular(s)


def test_direct_sum_so_data():
    rng = random.Random(4)
    a, b = random_usp_datum(rng, 1, 2), random_usp_datum(rng, 2, 2)
    s = direct_sum([a, b])
    assert isinstance(s, SoDatum) and s.dimV == 3 and s.formW == a.formW
    s.check_invariants()
    M = moment_map_gl(s)
    assert M.submatrix(range(1), range(1)) == moment_map_gl(a)
    assert M.submatrix(range(1, 3), range(1, 3)) == moment_map_gl(b)


def test_direct_sum_rejects_mismatched_w():
    with pytest.raises(DimensionMismatch):
        direct_sum([AdhmDatum.zero(1, 2), AdhmDatum.zero(1, 3)])


def test_spectrum_examples():
    assert b1_spectrum(AdhmDatum(Matrix.diag([1, 2, 3]), Matrix.zeros(3, 3), Matrix.zeros(3, 1),
                                 Matrix.zeros(1, 3))).distinct
    nil = AdhmDatum(qmat([[0, 1], [0, 0]]), Matrix.zeros(2, 2), Matrix.zeros(2, 1), Matrix.zeros(1, 2))
    sp = b1_spectrum(nil)
    assert sp.eigenvalues == (0, 0) and not sp.distinct
    rot = AdhmDatum(qmat([[0, -1], [1, 0]]), Matrix.zeros(2, 2), Matrix.zeros(2, 1), Matrix.zeros(1, 2))
    with pytest.raises(NotSplitOverBase):
        b1_spectrum(rot)


def test_partition():
    assert Partition((4, 2, 2)).size == 8
    with pytest.raises(InvariantViolation):
        Partition((3, 1))
    with pytest.raises(InvariantViolation):
        Partition((2, 4))


# -- samples and compatible forms -------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3])
def test_samples_are_regular_zero_fibre(k):
    rng = random.Random(k)
    for x in (random_gl_datum(rng, k, 2), random_usp_datum(rng, k, 2)):
        assert moment_map_gl(x).is_zero() and is_regular(x) and b1_spectrum(x).distinct


def test_compatible_form_recovers_orthogonal_structure():
    rng = random.Random(12)
    y = random_usp_datum(rng, 2, 2)
    G = compatible_form(y.datum, y.formW, SYMMETRIC)
    assert G == y.formV
