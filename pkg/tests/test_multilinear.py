import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homcat.errors import DimensionError
from homcat.multilinear import (Multivector, QMatrix, QVec, StructureConstants, bracket_apply, exterior_basis,
                                extend_endo_exterior, graded_element, is_bracket_automorphism, wedge_sign)

from helpers import bracket_oracle, matmul_oracle, rand_skew_bracket

HEIS = StructureConstants.skew(3, {(0, 1): {2: 1}})


def basis(n, i):
    return QVec.basis(n, i)


# ---------------------------------------------------------------- wedge signs


def test_wedge_sign_examples():
    # labels are 1-based in prose, indices 0-based here
    assert wedge_sign((0, 2), (1,)) == (-1, (0, 1, 2))
    assert wedge_sign((0,), (0,)) is None
    assert wedge_sign((), (1,)) == (1, (1,))


def _perm_sign(seq):
    sign = 1
    for a, b in combinations(range(len(seq)), 2):
        if seq[a] > seq[b]:
            sign = -sign
    return sign


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wedge_sign_matches_inversion_count(n):
    for I in exterior_basis(n):
        for J in exterior_basis(n):
            res = wedge_sign(I, J)
            if set(I) & set(J):
                assert res is None
            else:
                assert res == (_perm_sign(I + J), tuple(sorted(I + J)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_wedge_associative_and_graded_commutative(n):
    els = [Multivector.basis(n, I) for I in exterior_basis(n)]
    for a in els:
        for b in els:
            sign = -1 if (a.degree() * b.degree()) % 2 else 1
            assert a.wedge(b) == b.wedge(a) * sign
            for c in els:
                assert a.wedge(b.wedge(c)) == a.wedge(b).wedge(c)


# ---------------------------------------------------------------- exterior extension


def test_extend_diag_gives_determinant():
    X = graded_element(2, {(0, 1): 1})
    assert extend_endo_exterior(QMatrix.diag([2, 3]))(X) == X * 6


def test_extend_identity():
    ident = extend_endo_exterior(QMatrix.identity(3))
    for I in exterior_basis(3):
        X = Multivector.basis(3, I, coeff=Fraction(5, 3))
        assert ident(X) == X


def test_extend_swap():
    swap = extend_endo_exterior(QMatrix([[0, 1], [1, 0]]))
    X = graded_element(2, {(0, 1): 1})
    assert swap(X) == -X
    assert swap(graded_element(2, {(0,): 1})) == graded_element(2, {(1,): 1})
    assert swap(graded_element(2, {(): 4})) == graded_element(2, {(): 4})


def test_extend_rejects_non_square():
    with pytest.raises(DimensionError):
        extend_endo_exterior(QMatrix([[1, 2, 3], [0, 1, 0]]))


def _det(m):
    rows = [list(r) for r in m.rows]
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * _det(QMatrix([r[:j] + r[j + 1:] for r in rows[1:]])) for j in range(n))


matrices3 = st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3)


@given(matrices3, matrices3)
def test_extension_is_functorial(a, b):
    A, B = QMatrix(a), QMatrix(b)
    left = extend_endo_exterior(A @ B)
    ea, eb = extend_endo_exterior(A), extend_endo_exterior(B)
    for I in exterior_basis(3):
        X = Multivector.basis(3, I)
        assert left(X) == ea(eb(X))


@given(matrices3)
def test_top_degree_scales_by_determinant(a):
    A = QMatrix(a)
    top = Multivector.basis(3, (0, 1, 2))
    assert extend_endo_exterior(A)(top) == top * _det(A)


# ---------------------------------------------------------------- brackets


def test_bracket_heisenberg():
    assert bracket_apply(HEIS, basis(3, 0), basis(3, 1)) == basis(3, 2)


def test_bracket_skew_kills_diagonal():
    c = rand_skew_bracket(random.Random(3), 3, 0.2)
    x = QVec([1, Fraction(-2, 3), 5])
    assert bracket_apply(c, x, x).is_zero()


def test_bracket_zero():
    assert bracket_apply(StructureConstants(3), basis(3, 0), basis(3, 1)).is_zero()


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionError):
        bracket_apply(HEIS, basis(2, 0), basis(3, 1))


vectors3 = st.lists(st.fractions(-3, 3, max_denominator=3), min_size=3, max_size=3)


@given(vectors3, vectors3, st.integers(0, 10_000))
def test_bracket_matches_oracle(x, y, seed):
    c = rand_skew_bracket(random.Random(seed), 3, 0.3)
    assert list(bracket_apply(c, QVec(x), QVec(y))) == bracket_oracle(c, x, y)


# ---------------------------------------------------------------- automorphism check


def test_identity_is_always_automorphism():
    c = rand_skew_bracket(random.Random(9), 3, 0.0)
    assert is_bracket_automorphism(c, QMatrix.identity(3)).passed


def test_heisenberg_compatible_alpha():
    assert is_bracket_automorphism(HEIS, QMatrix.diag([2, 3, 6])).passed


def test_heisenberg_incompatible_alpha_witness():
    report = is_bracket_automorphism(HEIS, QMatrix.diag([2, 3, 5]))
    assert not report.passed
    w = report.failures[0]
    assert w.inputs == (basis(3, 0), basis(3, 1))
    assert w.lhs == basis(3, 2) * 5 and w.rhs == basis(3, 2) * 6


def test_automorphism_notes_invertibility():
    assert is_bracket_automorphism(HEIS, QMatrix.zero(3)).notes["alpha_invertible"] is False
    assert is_bracket_automorphism(HEIS, QMatrix.zero(3)).passed


# ---------------------------------------------------------------- matrices


@given(matrices3, matrices3)
def test_matmul_matches_oracle(a, b):
    assert (QMatrix(a) @ QMatrix(b)).rows == tuple(tuple(Fraction(v) for v in r) for r in matmul_oracle(a, b))


def test_column_convention():
    m = QMatrix([[1, 2], [3, 4]])
    assert m.apply(basis(2, 0)) == QVec([1, 3])
    assert m.column(1) == QVec([2, 4])


def test_column_space_rank():
    m = QMatrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert m.rank() == 2 and len(m.column_space()) == 2
