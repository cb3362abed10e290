"""Hom-Lie, hom-associative and hom-Poisson structures.

A hom-Lie algebra is a skew bracket together with a bracket automorphism
``alpha`` satisfying the twisted Jacobi identity

    [alpha x, [y, z]] + [alpha y, [z, x]] + [alpha z, [x, y]] = 0.

Checkers return a :class:`~homcat.report.CheckReport`; constructors whose
input violates a precondition raise :class:`~homcat.errors.AxiomError`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import AxiomError, DimensionError
from .exact_poly import (Exponents, Polynomial, PolySubstitution, monomials_up_to, poly_partial)
from .multilinear import (QMatrix, QVec, StructureConstants, bracket_apply, is_bracket_automorphism)
from .report import CheckReport


@dataclass(frozen=True)
class HomLieAlgebra:
    bracket: StructureConstants
    alpha: QMatrix
    name: str = ""

    def __post_init__(self):
        if self.alpha.shape != (self.bracket.dim, self.bracket.dim):
            raise DimensionError(f"alpha has shape {self.alpha.shape} but the bracket has dimension {self.bracket.dim}")

    @property
    def dim(self) -> int:
        return self.bracket.dim

    def br(self, x: QVec, y: QVec) -> QVec:
        return bracket_apply(self.bracket, x, y)

    def basis(self) -> List[QVec]:
        return [QVec.basis(self.dim, i) for i in range(self.dim)]


@dataclass(frozen=True)
class HomAssociativeAlgebra:
    product: StructureConstants
    alpha: QMatrix
    name: str = ""

    def __post_init__(self):
        if self.alpha.shape != (self.product.dim, self.product.dim):
            raise DimensionError(f"alpha has shape {self.alpha.shape} but the product has dimension {self.product.dim}")

    @property
    def dim(self) -> int:
        return self.product.dim

    def mul(self, x: QVec, y: QVec) -> QVec:
        return bracket_apply(self.product, x, y)


def hom_jacobiator(bracket: StructureConstants, alpha: QMatrix, x: QVec, y: QVec, z: QVec) -> QVec:
    br = lambda u, v: bracket_apply(bracket, u, v)
    return (br(alpha.apply(x), br(y, z)) + br(alpha.apply(y), br(z, x))
            + br(alpha.apply(z), br(x, y)))


def check_hom_jacobi(g: HomLieAlgebra) -> CheckReport:
    """Skew-symmetry, alpha-compatibility and the hom-Jacobi identity.

    The Jacobiator of a skew bracket is alternating, so strictly increasing
    basis triples suffice once skew-symmetry has been checked.
    """
    report = CheckReport(name=f"hom-Lie algebra {g.name}".strip())
    n = g.dim
    e = g.basis()
    zero = QVec.zero(n)
    report.touch("skew_symmetry")
    for i, j in combinations_with_replacement(range(n), 2):
        report.record("skew_symmetry", (e[i], e[j]), g.bracket.value(i, j), -g.bracket.value(j, i))
    report.merge(is_bracket_automorphism(g.bracket, g.alpha))
    report.touch("hom_jacobi")
    for i, j, k in combinations(range(n), 3):
        report.record("hom_jacobi", (e[i], e[j], e[k]), hom_jacobiator(g.bracket, g.alpha, e[i], e[j], e[k]), zero)
    return report


def _require_compatible(bracket: StructureConstants, alpha: QMatrix) -> None:
    compat = is_bracket_automorphism(bracket, alpha)
    if not compat.passed:
        raise AxiomError("alpha is not an automorphism of the bracket", compat)


def composition_hom_lie(bracket: StructureConstants, alpha: QMatrix, name: str = "") -> HomLieAlgebra:
    """The triple (g, alpha o [ , ], alpha).

    It is hom-Lie exactly when [ , ] restricted to the image of alpha^2 is a
    Lie bracket; that equivalence is checked by the test-suite, not here.
    """
    _require_compatible(bracket, alpha)
    return HomLieAlgebra(bracket.composed(alpha), alpha, name)


def is_lie_on_image(bracket: StructureConstants, alpha: QMatrix) -> CheckReport:
    """Skewness and the (untwisted) Jacobi identity on a basis of im(alpha^2)."""
    if alpha.shape != (bracket.dim, bracket.dim):
        raise DimensionError("alpha and bracket dimensions differ")
    report = CheckReport(name="Lie on image of alpha^2")
    basis = (alpha @ alpha).column_space()
    report.notes["image_rank"] = len(basis)
    br = lambda u, v: bracket_apply(bracket, u, v)
    zero = QVec.zero(bracket.dim)
    report.touch("image_skew")
    report.touch("image_jacobi")
    for a, b in combinations_with_replacement(range(len(basis)), 2):
        u, v = basis[a], basis[b]
        report.record("image_skew", (u, v), br(u, v), -br(v, u))
    for a, b, c in combinations(range(len(basis)), 3):
        u, v, w = basis[a], basis[b], basis[c]
        jac = br(u, br(v, w)) + br(v, br(w, u)) + br(w, br(u, v))
        report.record("image_jacobi", (u, v, w), jac, zero)
    return report


def check_hom_associativity(a: HomAssociativeAlgebra) -> CheckReport:
    report = CheckReport(name=f"hom-associative algebra {a.name}".strip())
    n = a.dim
    e = [QVec.basis(n, i) for i in range(n)]
    report.merge(is_bracket_automorphism(a.product, a.alpha))
    report.touch("hom_associativity")
    for i, j, k in product(range(n), repeat=3):
        lhs = a.mul(a.alpha.apply(e[i]), a.mul(e[j], e[k]))
        rhs = a.mul(a.mul(e[i], e[j]), a.alpha.apply(e[k]))
        report.record("hom_associativity", (e[i], e[j], e[k]), lhs, rhs)
    return report


def composition_hom_associative(product_: StructureConstants, alpha: QMatrix, name: str = "") -> HomAssociativeAlgebra:
    _require_compatible(product_, alpha)
    return HomAssociativeAlgebra(product_.composed(alpha), alpha, name)


def commutator_bracket(a: HomAssociativeAlgebra) -> HomLieAlgebra:
    """[x, y] = mu(x, y) - mu(y, x), with the same alpha."""
    n = a.dim
    entries: Dict[Tuple[int, int, int], Fraction] = {}
    for (i, j, k), c in a.product.entries.items():
        entries[(i, j, k)] = entries.get((i, j, k), 0) + c
        entries[(j, i, k)] = entries.get((j, i, k), 0) - c
    return HomLieAlgebra(StructureConstants(n, entries), a.alpha, f"commutator of {a.name}".strip())


# ---------------------------------------------------------------- representations


@dataclass(frozen=True)
class Representation:
    """rho(e_i) as m x m matrices, together with the twisting map alpha_V."""

    rho: Tuple[QMatrix, ...]
    alpha_v: QMatrix
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        m = self.alpha_v.nrows
        if not self.alpha_v.is_square() or any(r.shape != (m, m) for r in self.rho):
            raise DimensionError("representation matrices must all be square of the same size")

    @property
    def space_dim(self) -> int:
        return self.alpha_v.nrows

    def of(self, x: QVec) -> QMatrix:
        """rho(x) for an arbitrary vector x."""
        if x.dim != len(self.rho):
            raise DimensionError("vector does not live in the acting algebra")
        out = QMatrix.zero(self.space_dim)
        for c, r in zip(x.coeffs, self.rho):
            if c:
                out = out + r.scale(c)
        return out


def check_representation(g: HomLieAlgebra, r: Representation) -> CheckReport:
    """rho(alpha x) alpha_V = alpha_V rho(x)  and
    rho([x, y]) alpha_V = rho(alpha x) rho(y) - rho(alpha y) rho(x)."""
    if len(r.rho) != g.dim:
        raise DimensionError(f"representation has {len(r.rho)} operators for an algebra of dimension {g.dim}")
    report = CheckReport(name=f"representation {r.name}".strip())
    e = g.basis()
    av = r.alpha_v
    report.touch("rep_alpha")
    report.touch("rep_bracket")
    for i in range(g.dim):
        report.record("rep_alpha", (e[i],), r.of(g.alpha.apply(e[i])) @ av, av @ r.rho[i])
    for i, j in product(range(g.dim), repeat=2):
        lhs = r.of(g.br(e[i], e[j])) @ av
        rhs = r.of(g.alpha.apply(e[i])) @ r.rho[j] - r.of(g.alpha.apply(e[j])) @ r.rho[i]
        report.record("rep_bracket", (e[i], e[j]), lhs, rhs)
    return report


def adjoint_operator(g: HomLieAlgebra, x: QVec, s: int) -> QMatrix:
    """Matrix of y -> [alpha^s x, y]."""
    ax = (g.alpha ** s).apply(x)
    return QMatrix.from_columns([g.br(ax, ej) for ej in g.basis()], g.dim)


def adjoint_rep(g: HomLieAlgebra, s: int) -> Representation:
    if s < 0:
        raise ValueError("s must be non-negative")
    return Representation(tuple(adjoint_operator(g, x, s) for x in g.basis()), g.alpha, f"ad^{s}")


def check_adjoint_identity(g: HomLieAlgebra, s: int) -> CheckReport:
    """ad^s_{[x,y]} o alpha == ad^s_{alpha x} o ad^s_y - ad^s_{alpha y} o ad^s_x."""
    report = CheckReport(name=f"alpha^{s}-adjoint identity")
    e = g.basis()
    ad = lambda x: adjoint_operator(g, x, s)
    report.touch("adjoint_identity")
    for i, j in product(range(g.dim), repeat=2):
        lhs = ad(g.br(e[i], e[j])) @ g.alpha
        rhs = ad(g.alpha.apply(e[i])) @ ad(e[j]) - ad(g.alpha.apply(e[j])) @ ad(e[i])
        report.record("adjoint_identity", (e[i], e[j]), lhs, rhs)
    return report


# ---------------------------------------------------------------- hom-Poisson models


@dataclass(eq=False)
class HomPoissonPolyModel:
    """Polynomial algebra Q[x1..xn] with a product, a bracket and alpha.

    ``product_mode`` is ``"plain"`` (mu(f, g) = fg) or ``"composed"``
    (mu(f, g) = alpha(fg)).  The bracket is given on pairs of monomials and
    extended bilinearly; results are memoised per monomial pair.
    """

    nvars: int
    product_mode: str
    monomial_bracket: Callable[[Exponents, Exponents], Polynomial]
    alpha: PolySubstitution
    name: str = ""
    _cache: Dict[Tuple[Exponents, Exponents], Polynomial] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.product_mode not in ("plain", "composed"):
            raise ValueError(f"unknown product mode {self.product_mode!r}")
        if self.alpha.nvars != self.nvars:
            raise DimensionError("alpha acts on a different polynomial ring")

    def mu(self, f: Polynomial, g: Polynomial) -> Polynomial:
        p = f * g
        return self.alpha(p) if self.product_mode == "composed" else p

    def _mono(self, e1: Exponents, e2: Exponents) -> Polynomial:
        key = (e1, e2)
        v = self._cache.get(key)
        if v is None:
            v = self.monomial_bracket(e1, e2)
            self._cache[key] = v
        return v

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        out = Polynomial.zero(self.nvars)
        for e1, c1 in f.terms.items():
            for e2, c2 in g.terms.items():
                out = out + self._mono(e1, e2).scale(c1 * c2)
        return out

    def with_product(self, product_mode: str) -> "HomPoissonPolyModel":
        return HomPoissonPolyModel(self.nvars, product_mode, self.monomial_bracket, self.alpha, self.name)


def _monomials(m: HomPoissonPolyModel, degree_bound: int) -> List[Polynomial]:
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    return [Polynomial.monomial(e) for e in monomials_up_to(m.nvars, degree_bound)]


def _check_hom_lie_part(m: HomPoissonPolyModel, monos: List[Polynomial], report: CheckReport) -> None:
    al = m.alpha
    zero = Polynomial.zero(m.nvars)
    for ident in ("bracket_skew", "alpha_bracket_morphism", "hom_jacobi"):
        report.touch(ident)
    for x, y in combinations_with_replacement(monos, 2):
        report.record("bracket_skew", (x, y), m.bracket(x, y), -m.bracket(y, x))
    for x, y in product(monos, repeat=2):
        report.record("alpha_bracket_morphism", (x, y), al(m.bracket(x, y)), m.bracket(al(x), al(y)))
    for x, y, z in combinations(monos, 3):
        jac = (m.bracket(al(x), m.bracket(y, z)) + m.bracket(al(y), m.bracket(z, x))
               + m.bracket(al(z), m.bracket(x, y)))
        report.record("hom_jacobi", (x, y, z), jac, zero)


def check_hom_poisson(m: HomPoissonPolyModel, degree_bound: int = 3) -> CheckReport:
    """The three hom-Poisson axioms on all monomials of degree <= degree_bound.

    This is evidence, not a proof: the identities are multilinear, so they are
    verified on the monomial basis of the bounded-degree subspace only.
    """
    monos = _monomials(m, degree_bound)
    al = m.alpha
    report = CheckReport(name=f"hom-Poisson {m.name}".strip())
    report.notes["degree_bound"] = degree_bound
    for ident in ("commutativity", "alpha_product_morphism", "hom_associativity", "hom_poisson_leibniz"):
        report.touch(ident)
    for x, y in combinations(monos, 2):
        report.record("commutativity", (x, y), m.mu(x, y), m.mu(y, x))
    for x, y in combinations_with_replacement(monos, 2):
        report.record("alpha_product_morphism", (x, y), al(m.mu(x, y)), m.mu(al(x), al(y)))
    for x, y, z in product(monos, repeat=3):
        report.record("hom_associativity", (x, y, z), m.mu(al(x), m.mu(y, z)), m.mu(m.mu(x, y), al(z)))
    _check_hom_lie_part(m, monos, report)
    for x in monos:
        for y, z in combinations_with_replacement(monos, 2):
            lhs = m.bracket(al(x), m.mu(y, z))
            rhs = m.mu(al(y), m.bracket(x, z)) + m.mu(m.bracket(x, y), al(z))
            report.record("hom_poisson_leibniz", (x, y, z), lhs, rhs)
    return report


def check_purely_hom_poisson(m: HomPoissonPolyModel, degree_bound: int = 3) -> CheckReport:
    """Plain commutative associativity, hom-Lie, and the untwisted-first-slot Leibniz rule."""
    monos = _monomials(m, degree_bound)
    al = m.alpha
    report = CheckReport(name=f"purely hom-Poisson {m.name}".strip())
    report.notes["degree_bound"] = degree_bound
    for ident in ("commutativity", "associativity", "purely_leibniz"):
        report.touch(ident)
    for x, y in combinations(monos, 2):
        report.record("commutativity", (x, y), m.mu(x, y), m.mu(y, x))
    for x, y, z in product(monos, repeat=3):
        report.record("associativity", (x, y, z), m.mu(x, m.mu(y, z)), m.mu(m.mu(x, y), z))
    _check_hom_lie_part(m, monos, report)
    for x in monos:
        for y, z in combinations_with_replacement(monos, 2):
            lhs = m.bracket(x, m.mu(y, z))
            rhs = m.mu(al(y), m.bracket(x, z)) + m.mu(m.bracket(x, y), al(z))
            report.record("purely_leibniz", (x, y, z), lhs, rhs)
    return report


def symmetric_alpha(g: HomLieAlgebra) -> PolySubstitution:
    """alpha extended to S(g) = Q[x1..xn]: x_i -> alpha(e_i) = sum_j alpha[j][i] x_j."""
    return PolySubstitution.linear(g.alpha.transpose().rows) if g.dim else PolySubstitution([], 0)


def _linear_poly(v: QVec) -> Polynomial:
    n = v.dim
    return Polynomial(n, {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(v.coeffs) if c})


def sym_poisson_from_hom_lie(g: HomLieAlgebra) -> HomPoissonPolyModel:
    """The hom-Poisson algebra (S(g), alpha o mu, { , }, alpha).

    On monomials x^a, x^b (multisets of basis vectors)

        {x^a, x^b} = sum_{k,l} a_k b_l [e_k, e_l] * alpha(x^a / x_k * x^b / x_l).
    """
    report = check_hom_jacobi(g)
    if not report.passed:
        raise AxiomError("the input is not a hom-Lie algebra", report)
    n = g.dim
    alpha = symmetric_alpha(g)
    brackets = {(k, l): _linear_poly(g.bracket.value(k, l)) for k in range(n) for l in range(n)}

    def monomial_bracket(a: Exponents, b: Exponents) -> Polynomial:
        out = Polynomial.zero(n)
        for k in range(n):
            if not a[k]:
                continue
            for l in range(n):
                if not b[l] or not brackets[(k, l)]:
                    continue
                rest = tuple(a[t] + b[t] - (t == k) - (t == l) for t in range(n))
                term = brackets[(k, l)] * alpha(Polynomial.monomial(rest))
                out = out + term.scale(a[k] * b[l])
        return out

    return HomPoissonPolyModel(n, "composed", monomial_bracket, alpha, f"S({g.name})" if g.name else "S(g)")


def check_dual_formula(g: HomLieAlgebra, degree_bound: int = 3) -> CheckReport:
    """Compare {F, G}(a) = <[dF|_{alpha* a}, dG|_{alpha* a}], a> with the double-sum bracket.

    Polynomials on g* are written in the coordinates x_k = e_k; alpha* is the
    transpose of alpha, so composing with alpha* is the substitution
    x_i -> sum_j alpha[j][i] x_j.
    """
    model = sym_poisson_from_hom_lie(g)
    n = g.dim
    pull = symmetric_alpha(g)
    coords = [Polynomial.var(n, k) for k in range(n)]
    report = CheckReport(name="dual pairing formula")
    report.touch("dual_pairing")
    monos = [Polynomial.monomial(e) for e in monomials_up_to(n, degree_bound)]
    for F, G in product(monos, repeat=2):
        dF = [pull(poly_partial(F, i)) for i in range(n)]
        dG = [pull(poly_partial(G, j)) for j in range(n)]
        dual = Polynomial.zero(n)
        for (i, j, k), c in g.bracket.entries.items():
            if dF[i] and dG[j]:
                dual = dual + (coords[k] * dF[i] * dG[j]).scale(c)
        report.record("dual_pairing", (F, G), dual, model.bracket(F, G))
    return report
