"""Polynomial multivector fields and differential forms on Q^n.

Multivector fields use the frame ∂_1..∂_n, forms the coframe dx_1..dx_n;
both are sparse sums over sorted index tuples with polynomial coefficients.

Conventions:

* ``[X, F] = X[F]`` for a vector field and a function, and the Schouten
  bracket of vector fields is their Lie bracket.  Higher degrees follow the
  graded Leibniz rule, which is the hom-Gerstenhaber extension rule with
  phi = id and alpha = id on the tangent algebroid.
* contraction pairs ``∂_I`` with ``dx_I`` to 1 and contracts the indices of
  the multivector from the left: ``i(∂_1∧∂_2) = i(∂_2) o i(∂_1)``.
* ``pi(a, b) = sum_ij pi^ij a_i b_j`` and ``(pi# a)^j = sum_i a_i pi^ij``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence

from .errors import AxiomError, DimensionError
from .exact_poly import (Exponents, Polynomial, PolySubstitution, poly_partial, substitution_compose)
from .hom_algebras import HomPoissonPolyModel
from .hom_gerstenhaber import HomGerstenhaberModel
from .multilinear import ExtIndex, Multivector, wedge_sign
from .report import CheckReport


class MultivectorField(Multivector):
    """Polynomial multivector field on Q^n (rank == nvars)."""

    __slots__ = ()
    prefix = "∂"

    def __init__(self, nvars: int, terms=None):
        super().__init__(nvars, nvars, terms)

    @classmethod
    def zero(cls, nvars: int) -> "MultivectorField":
        return cls(nvars)

    @classmethod
    def function(cls, F: Polynomial) -> "MultivectorField":
        return cls(F.nvars, {(): F})

    @classmethod
    def vector_field(cls, components: Sequence[Polynomial]) -> "MultivectorField":
        n = len(components)
        return cls(n, {(i,): c for i, c in enumerate(components) if c})

    def components(self) -> list:
        """Coefficients of a vector field (degree-1 part)."""
        return [self.coeff((i,)) for i in range(self.rank)]


class Form(Multivector):
    """Polynomial differential form on Q^n."""

    __slots__ = ()
    prefix = "dx"

    def __init__(self, nvars: int, terms=None):
        super().__init__(nvars, nvars, terms)

    @classmethod
    def zero(cls, nvars: int) -> "Form":
        return cls(nvars)

    @classmethod
    def function(cls, F: Polynomial) -> "Form":
        return cls(F.nvars, {(): F})

    @classmethod
    def one_form(cls, components: Sequence[Polynomial]) -> "Form":
        n = len(components)
        return cls(n, {(i,): c for i, c in enumerate(components) if c})

    def components(self) -> list:
        return [self.coeff((i,)) for i in range(self.rank)]


def as_field(X: Multivector) -> MultivectorField:
    return MultivectorField(X.nvars, X.terms)


def as_form(w: Multivector) -> Form:
    return Form(w.nvars, w.terms)


def _same_n(*objs):
    ns = {o.nvars for o in objs}
    if len(ns) > 1:
        raise DimensionError(f"objects live on spaces of different dimension: {sorted(ns)}")


# ---------------------------------------------------------------- Schouten bracket


@lru_cache(maxsize=None)
def tangent_model(nvars: int) -> HomGerstenhaberModel:
    """Γ(∧TQ^n): zero brackets on the coordinate frame, identity anchor."""
    one, zero = Polynomial.one(nvars), Polynomial.zero(nvars)
    anchor = [[one if a == i else zero for i in range(nvars)] for a in range(nvars)]
    images = [Multivector.basis(nvars, (a,), nvars) for a in range(nvars)]
    return HomGerstenhaberModel(nvars, nvars, images, {}, anchor, PolySubstitution.identity(nvars),
                                name=f"multivector fields on Q^{nvars}")


def schouten(X: Multivector, Y: Multivector) -> MultivectorField:
    """Schouten-Nijenhuis bracket [X, Y]."""
    _same_n(X, Y)
    return as_field(tangent_model(X.nvars).bracket(as_field(X), as_field(Y)))


# ---------------------------------------------------------------- Cartan calculus


def de_rham_d(w: Multivector) -> Form:
    n = w.nvars
    out: Dict[ExtIndex, Polynomial] = {}
    for J, F in w.terms.items():
        for i in range(n):
            if i in J:
                continue
            dF = poly_partial(F, i)
            if not dF:
                continue
            sign, K = wedge_sign((i,), J)
            v = dF if sign > 0 else -dF
            out[K] = out[K] + v if K in out else v
    return Form(n, out)


def _contract_index(i: int, J: ExtIndex):
    """i(∂_i) dx_J = sign dx_{J - i}, or None."""
    if i not in J:
        return None
    s = J.index(i)
    return (-1 if s % 2 else 1), J[:s] + J[s + 1:]


def interior(X: Multivector, w: Multivector) -> Form:
    """Contraction of the form w by the multivector field X.

    The result is a Form; degree-0 results are stored under the empty index
    (``.coeff(())``).  Components with deg X > deg w contribute zero.
    """
    _same_n(X, w)
    n = w.nvars
    out: Dict[ExtIndex, Polynomial] = {}
    for I, F in X.terms.items():
        for J, G in w.terms.items():
            if len(I) > len(J):
                continue
            sign, K = 1, J
            for i in I:
                step = _contract_index(i, K)
                if step is None:
                    break
                sign *= step[0]
                K = step[1]
            else:
                v = F * G
                if sign < 0:
                    v = -v
                v = out[K] + v if K in out else v
                if v:
                    out[K] = v
                else:
                    out.pop(K, None)
    return Form(n, out)


def _require_vector_field(X: Multivector) -> None:
    if X.degrees() - {1}:
        raise DimensionError("a vector field (degree 1) is required")


def lie_derivative(X: Multivector, w: Multivector) -> Form:
    """L_X w = i_X dw + d i_X w."""
    _require_vector_field(X)
    return interior(X, de_rham_d(w)) + de_rham_d(interior(X, w))


def apply_vector_field(X: Multivector, F: Polynomial) -> Polynomial:
    _require_vector_field(X)
    out = Polynomial.zero(F.nvars)
    for (i,), c in X.terms.items():
        out = out + c * poly_partial(F, i)
    return out


def bivector_matrix(pi: Multivector) -> list:
    """Full skew matrix pi^ij of a bivector."""
    if pi.degrees() - {2}:
        raise DimensionError("a bivector (degree 2) is required")
    n = pi.nvars
    zero = Polynomial.zero(n)
    mat = [[zero] * n for _ in range(n)]
    for (i, j), c in pi.terms.items():
        mat[i][j] = c
        mat[j][i] = -c
    return mat


def pi_sharp(pi: Multivector, a: Multivector) -> MultivectorField:
    _same_n(pi, a)
    if a.degrees() - {1}:
        raise DimensionError("pi# applies to 1-forms")
    mat = bivector_matrix(pi)
    n = pi.nvars
    comps = [Polynomial.zero(n)] * n
    for (i,), ai in a.terms.items():
        for j in range(n):
            if mat[i][j]:
                comps[j] = comps[j] + ai * mat[i][j]
    return MultivectorField.vector_field(comps)


def pairing(pi: Multivector, a: Multivector, b: Multivector) -> Polynomial:
    """pi(a, b) = sum_ij pi^ij a_i b_j."""
    sharp = pi_sharp(pi, a)
    return interior(sharp, b).coeff(())


def poisson_bracket(pi: Multivector, F: Polynomial, G: Polynomial) -> Polynomial:
    """{F, G} = pi(dF, dG)."""
    return pairing(pi, de_rham_d(Form.function(F)), de_rham_d(Form.function(G)))


# Measured once on pi = ∂1∧∂2 + x2 ∂2∧∂3 and frozen: with the conventions above
#   {{F,G},H} + {{G,H},F} + {{H,F},G} == JACOBI_SCHOUTEN_CONSTANT * i([pi,pi]) (dF∧dG∧dH).
JACOBI_SCHOUTEN_CONSTANT = Fraction(-1, 2)


def poisson_jacobiator(pi: Multivector, F: Polynomial, G: Polynomial, H: Polynomial) -> Polynomial:
    pb = lambda a, b: poisson_bracket(pi, a, b)
    return pb(pb(F, G), H) + pb(pb(G, H), F) + pb(pb(H, F), G)


def schouten_contraction(pi: Multivector, F: Polynomial, G: Polynomial, H: Polynomial) -> Polynomial:
    """i([pi,pi]) (dF∧dG∧dH)."""
    d = lambda f: de_rham_d(Form.function(f))
    return interior(schouten(pi, pi), d(F).wedge(d(G)).wedge(d(H))).coeff(())


# ---------------------------------------------------------------- hom-Poisson manifolds


def bivector_pushforward_check(pi: Multivector, phi: PolySubstitution) -> CheckReport:
    """pi^kl o phi == sum_ij (d_i phi^k)(d_j phi^l) pi^ij for all k < l."""
    if pi.nvars != phi.nvars:
        raise DimensionError("bivector and map live on different spaces")
    mat = bivector_matrix(pi)
    n = pi.nvars
    jac = [[poly_partial(phi.images[k], i) for i in range(n)] for k in range(n)]
    report = CheckReport(name="phi preserves pi")
    report.touch("pushforward")
    for k in range(n):
        for l in range(k + 1, n):
            rhs = Polynomial.zero(n)
            for i in range(n):
                for j in range(n):
                    if mat[i][j] and jac[k][i] and jac[l][j]:
                        rhs = rhs + jac[k][i] * jac[l][j] * mat[i][j]
            report.record("pushforward", (f"∂{k + 1}∧∂{l + 1}",), phi(mat[k][l]), rhs)
    return report


def vanishes_on_image(f: Polynomial, phi: PolySubstitution) -> bool:
    """True iff f vanishes on phi^2(Q^n), i.e. f o phi o phi == 0."""
    return not f(substitution_compose(phi, phi))


def check_hom_poisson_manifold(pi: Multivector, phi: PolySubstitution) -> CheckReport:
    """phi preserves pi and every coefficient of [pi, pi] vanishes on phi^2(Q^n)."""
    report = CheckReport(name="hom-Poisson manifold")
    report.merge(bivector_pushforward_check(pi, phi))
    report.name = "hom-Poisson manifold"
    sq = substitution_compose(phi, phi)
    bracket = schouten(pi, pi)
    report.notes["schouten_pi_pi"] = str(bracket)
    report.touch("jacobi_on_image")
    zero = Polynomial.zero(pi.nvars)
    for I, c in bracket.items():
        label = "∧".join(f"∂{i + 1}" for i in I)
        report.record("jacobi_on_image", (f"[pi,pi] coefficient of {label}",), c(sq), zero)
    return report


def hom_poisson_by_composition(pi: Multivector, phi: PolySubstitution, purely: bool = False,
                               validate: bool = True) -> HomPoissonPolyModel:
    """(Q[x], phi* o mu, phi* o {,}_pi, phi*), or the purely variant with plain mu."""
    if validate:
        report = check_hom_poisson_manifold(pi, phi)
        if not report.passed:
            raise AxiomError("(pi, phi) is not a hom-Poisson manifold", report)
    n = pi.nvars
    pi_f = MultivectorField(n, pi.terms)

    def monomial_bracket(a: Exponents, b: Exponents) -> Polynomial:
        return phi(poisson_bracket(pi_f, Polynomial.monomial(a), Polynomial.monomial(b)))

    return HomPoissonPolyModel(n, "plain" if purely else "composed", monomial_bracket, phi,
                               name="purely hom-Poisson by composition" if purely else "hom-Poisson by composition")


def koszul_bracket(pi: Multivector, a: Multivector, b: Multivector) -> Form:
    """[a, b]_pi = L_{pi# a} b - L_{pi# b} a - d(pi(a, b)) on 1-forms.

    With the pairing and pi# conventions of this module this is the sign that
    satisfies the Leibniz rule for the anchor pi# and gives [dF, dG] = d{F, G}.
    """
    return (lie_derivative(pi_sharp(pi, a), b) - lie_derivative(pi_sharp(pi, b), a)
            - de_rham_d(Form.function(pairing(pi, a, b))))
