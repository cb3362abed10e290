import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homcat import fixtures as fx
from homcat.errors import AxiomError, DimensionError
from homcat.exact_poly import Polynomial, PolySubstitution
from homcat.hom_algebras import check_hom_poisson
from homcat.poly_geometry import (JACOBI_SCHOUTEN_CONSTANT, Form, MultivectorField, apply_vector_field,
                                  bivector_pushforward_check, check_hom_poisson_manifold, de_rham_d,
                                  hom_poisson_by_composition, interior, koszul_bracket, lie_derivative, pairing,
                                  pi_sharp, poisson_bracket, poisson_jacobiator, schouten, schouten_contraction,
                                  vanishes_on_image)

from helpers import rand_field, rand_poly, schouten_oracle

x1, x2 = Polynomial.var(2, 0), Polynomial.var(2, 1)
y = [Polynomial.var(3, i) for i in range(3)]


def d(i, n=2, c=1):
    return MultivectorField(n, {(i,): c})


def field(n, terms):
    return MultivectorField(n, terms)


def dF(F):
    return de_rham_d(Form.function(F))


# ---------------------------------------------------------------- Schouten bracket


def test_coordinate_fields_commute():
    assert not schouten(d(0), d(1))


def test_schouten_vector_fields():
    assert schouten(d(1, c=x1), d(0)) == -d(1)


def test_schouten_function_slot():
    assert schouten(d(0, c=x2), MultivectorField.function(x1 * x1)) == MultivectorField.function((x1 * x2).scale(2))


def test_constant_bivector_squares_to_zero():
    assert not schouten(field(2, {(0, 1): 1}), field(2, {(0, 1): 1}))


def test_pi3_square():
    pi, _ = fx.pi3_non_poisson()
    assert schouten(pi, pi) == field(3, {(0, 1, 2): 2})


def test_flagged_example_is_poisson():
    # x1 ∂2∧∂3 + ∂1∧∂2 squares to zero, so it is no counterexample
    pi = field(3, {(1, 2): y[0], (0, 1): 1})
    assert not schouten(pi, pi)


def test_schouten_dimension_mismatch():
    with pytest.raises(DimensionError):
        schouten(d(0), d(0, n=3))


@pytest.mark.parametrize("seed", range(25))
def test_schouten_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    X, Y = rand_field(rng, n, 2), rand_field(rng, n, 2)
    assert schouten(X, Y) == schouten_oracle(X, Y)


@given(st.integers(0, 100_000))
def test_schouten_graded_skew(seed):
    rng = random.Random(seed)
    X, Y = rand_field(rng, 3, 2), rand_field(rng, 3, 2)
    p, q = X.degree() if X else 0, Y.degree() if Y else 0
    sign = 1 if ((p - 1) * (q - 1)) % 2 else -1
    assert schouten(X, Y) == schouten(Y, X) * sign


@given(st.integers(0, 100_000))
def test_schouten_graded_leibniz(seed):
    rng = random.Random(seed)
    X, Y, Z = (rand_field(rng, 2, 1) for _ in range(3))
    p, q = X.degree() if X else 0, Y.degree() if Y else 0
    rhs = schouten(X, Y).wedge(Z)
    second = Y.wedge(schouten(X, Z))
    rhs = rhs + (-second if ((p - 1) * q) % 2 else second)
    assert schouten(X, Y.wedge(Z)) == rhs


@given(st.integers(0, 100_000))
def test_schouten_graded_jacobi(seed):
    rng = random.Random(seed)
    X, Y, Z = (rand_field(rng, 2, 1) for _ in range(3))
    p, q = X.degree() if X else 0, Y.degree() if Y else 0
    lhs = schouten(X, schouten(Y, Z))
    rhs = schouten(schouten(X, Y), Z)
    second = schouten(Y, schouten(X, Z))
    rhs = rhs + (-second if ((p - 1) * (q - 1)) % 2 else second)
    assert lhs == rhs


# ---------------------------------------------------------------- forms


def test_d_examples():
    assert dF(x1 * x2) == Form.one_form([x2, x1])
    assert de_rham_d(Form(2, {(1,): x1})) == Form(2, {(0, 1): 1})
    assert not dF(Polynomial.constant(2, 5))


@given(st.integers(0, 100_000))
def test_d_squared_is_zero(seed):
    rng = random.Random(seed)
    w = Form(3, dict(rand_field(rng, 3, 3).terms))
    assert not de_rham_d(de_rham_d(w))


def test_interior_examples():
    area = Form(2, {(0, 1): 1})
    assert interior(d(0), area) == Form(2, {(1,): 1})
    assert interior(d(1), area) == Form(2, {(0,): -1})
    assert interior(field(2, {(0, 1): 1}), area).coeff(()) == 1
    assert not interior(d(0), Form.function(x1))


def test_interior_contracts_from_the_left():
    w = Form(3, {(0, 1, 2): 1})
    X = field(3, {(0, 1): 1})
    assert interior(X, w) == interior(d(1, 3), interior(d(0, 3), w))


def test_lie_derivative_examples():
    assert lie_derivative(d(0), Form(2, {(1,): x1})) == Form(2, {(1,): 1})
    assert lie_derivative(d(0, c=x1), dF(x1)) == dF(x1)


def test_lie_derivative_rejects_bivector():
    with pytest.raises(DimensionError):
        lie_derivative(field(2, {(0, 1): 1}), dF(x1))


@given(st.integers(0, 100_000))
def test_lie_derivative_of_exact_form(seed):
    rng = random.Random(seed)
    X = MultivectorField.vector_field([rand_poly(rng, 2, 2) for _ in range(2)])
    F = rand_poly(rng, 2, 3)
    assert lie_derivative(X, dF(F)) == dF(apply_vector_field(X, F))


@given(st.integers(0, 100_000))
def test_lie_derivative_commutes_with_d(seed):
    rng = random.Random(seed)
    X = MultivectorField.vector_field([rand_poly(rng, 3, 1) for _ in range(3)])
    w = Form(3, dict(rand_field(rng, 3, 2).terms))
    assert lie_derivative(X, de_rham_d(w)) == de_rham_d(lie_derivative(X, w))


# ---------------------------------------------------------------- bivectors


def test_pi_sharp():
    pi = field(2, {(0, 1): 1})
    assert pi_sharp(pi, dF(x1)) == d(1)
    assert pi_sharp(pi, dF(x2)) == -d(0)
    assert not pi_sharp(pi, Form.zero(2))


def test_pairing_and_bracket():
    pi = field(2, {(0, 1): 1})
    assert pairing(pi, dF(x1), dF(x2)) == 1
    assert poisson_bracket(pi, x1, x2) == 1
    assert poisson_bracket(pi, x1 * x1, x2) == x1.scale(2)


@given(st.integers(0, 100_000))
def test_jacobiator_is_constant_times_schouten(seed):
    rng = random.Random(seed)
    pi = field(3, {I: rand_poly(rng, 3, 1) for I in [(0, 1), (0, 2), (1, 2)]})
    F, G, H = (rand_poly(rng, 3, 2) for _ in range(3))
    assert poisson_jacobiator(pi, F, G, H) == schouten_contraction(pi, F, G, H) * JACOBI_SCHOUTEN_CONSTANT


def test_jacobi_constant_on_pi3():
    pi, _ = fx.pi3_non_poisson()
    assert poisson_jacobiator(pi, *y) == -1
    assert schouten_contraction(pi, *y) == 2


# ---------------------------------------------------------------- hom-Poisson manifolds


def test_pushforward_fix_pi2():
    assert bivector_pushforward_check(*fx.fix_pi2()).passed


def test_pushforward_scaling_witness():
    r = bivector_pushforward_check(*fx.pi2_scaling())
    w = r.witnesses("pushforward")[0]
    assert w.lhs == 1 and w.rhs == 2


def test_vanishes_on_image():
    proj = PolySubstitution([x1, Polynomial.zero(2)])
    assert vanishes_on_image(x2, proj)
    assert not vanishes_on_image(x1, proj)
    assert vanishes_on_image(Polynomial.zero(2), PolySubstitution.identity(2))


def test_manifold_fix_pi2_passes():
    assert check_hom_poisson_manifold(*fx.fix_pi2()).passed


def test_zero_bivector_passes():
    assert check_hom_poisson_manifold(MultivectorField.zero(2), fx.pi2_scaling()[1]).passed


def test_manifold_pi3_fails_after_phi_squared():
    r = check_hom_poisson_manifold(*fx.pi3_non_poisson())
    assert r.checked["pushforward"] and not r.failed("pushforward")
    w = r.witnesses("jacobi_on_image")[0]
    assert w.lhs == 2 and w.rhs == 0


def test_degenerate_phi_kills_jacobi_defect():
    # phi collapses onto x2 = 0, where the defect 2 ∂1∧∂2∧∂3 is still a nonzero constant
    pi, _ = fx.pi3_non_poisson()
    phi = PolySubstitution([y[0], Polynomial.zero(3), Polynomial.zero(3)])
    r = check_hom_poisson_manifold(pi, phi)
    assert r.failed("jacobi_on_image")


def test_composition_bracket():
    m = hom_poisson_by_composition(*fx.fix_pi2())
    assert m.bracket(x1, x2) == 1
    assert m.bracket(x1 * x1, x2) == (x1 + x2 * x2).scale(2)
    assert m.mu(x1, x1) == (x1 + x2 * x2) ** 2


def test_composition_zero_bivector():
    m = hom_poisson_by_composition(MultivectorField.zero(2), fx.fix_pi2()[1])
    assert not m.bracket(x1 * x2, x2 ** 2)


def test_composition_rejects_non_manifold():
    with pytest.raises(AxiomError):
        hom_poisson_by_composition(*fx.pi3_non_poisson())


def test_composition_model_is_hom_poisson():
    assert check_hom_poisson(hom_poisson_by_composition(*fx.fix_pi2()), 2).passed


# ---------------------------------------------------------------- Koszul bracket


def test_koszul_constant():
    pi = field(2, {(0, 1): 1})
    assert not koszul_bracket(pi, dF(x1), dF(x2))


@given(st.integers(0, 100_000))
def test_koszul_of_exact_forms(seed):
    rng = random.Random(seed)
    pi = field(2, {(0, 1): rand_poly(rng, 2, 2)})
    F, G = rand_poly(rng, 2, 2), rand_poly(rng, 2, 2)
    assert koszul_bracket(pi, dF(F), dF(G)) == dF(poisson_bracket(pi, F, G))


def _literal_koszul(pi, a, b):
    return (lie_derivative(pi_sharp(pi, a), b) - lie_derivative(pi_sharp(pi, b), a)
            + dF(pairing(pi, a, b)))


def test_koszul_leibniz_and_literal_sign():
    pi = field(2, {(0, 1): x1})
    a, b, f = dF(x1), dF(x2), x2
    anchor_f = apply_vector_field(pi_sharp(pi, a), f)
    expected = koszul_bracket(pi, a, b) * f + b * anchor_f
    assert koszul_bracket(pi, a, b * f) == expected
    assert _literal_koszul(pi, a, b * f) != _literal_koszul(pi, a, b) * f + b * anchor_f


def test_koszul_scalar_multiple():
    pi = field(2, {(0, 1): 1})
    half = Fraction(1, 2)
    assert koszul_bracket(pi, dF(x1) * half, dF(x1 * x2)) == koszul_bracket(pi, dF(x1), dF(x1 * x2)) * half
