"""Hom-Lie algebroids over Q^n with a trivialised bundle of rank r.

Sections are degree-1 multivectors ``X = sum_a X^a e_a`` with polynomial
coefficients.  A model stores

* ``phi``: the polynomial base map, acting on functions by pullback;
* ``alpha_mat[a][b]``: ``alpha(e_a) = sum_b alpha_mat[a][b] e_b``, extended
  by ``alpha(F X) = phi*(F) alpha(X)``;
* ``anchor_mat[a][i]``: ``rho(e_a)[F] = sum_i anchor_mat[a][i] phi*(d_i F)``,
  so that rho(e_a) reads the differential of F at phi(m);
* ``bracket_consts[(a, b, c)]``: ``[e_a, e_b] = sum_c C_ab^c e_c``.

The bracket of arbitrary sections is the Q-bilinear extension given by the
hom-Leibniz rule in each slot.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AxiomError, DimensionError
from .exact_poly import Polynomial, PolySubstitution, monomials_up_to, poly_partial
from .hom_algebras import HomLieAlgebra, check_hom_jacobi
from .hom_gerstenhaber import (HomGerstenhaberModel, check_graded_hom_jacobi, check_hom_leibniz,
                               extract_anchor_rep)
from .multilinear import Multivector
from .poly_geometry import (MultivectorField, bivector_matrix, check_hom_poisson_manifold, koszul_bracket,
                            Form, apply_vector_field)
from .report import CheckReport

Section = Multivector


@dataclass(frozen=True)
class PhiDerivation:
    """delta(F) = sum_i components[i] * phi*(d_i F)."""

    components: Tuple[Polynomial, ...]
    phi: PolySubstitution

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.phi.nvars or any(c.nvars != self.phi.nvars for c in self.components):
            raise DimensionError("derivation components do not match the base map")

    def __call__(self, F: Polynomial) -> Polynomial:
        out = Polynomial.zero(self.phi.nvars)
        for i, c in enumerate(self.components):
            if c:
                d = poly_partial(F, i)
                if d:
                    out = out + c * self.phi(d)
        return out


class HomLieAlgebroidModel:
    def __init__(self, nvars: int, rank: int, phi: PolySubstitution,
                 alpha_mat: Sequence[Sequence[Polynomial]], anchor_mat: Sequence[Sequence[Polynomial]],
                 bracket_consts: Dict[Tuple[int, int, int], Polynomial], name: str = ""):
        if phi.nvars != nvars:
            raise DimensionError("phi acts on the wrong number of variables")
        self.nvars, self.rank, self.phi, self.name = nvars, rank, phi, name
        self.alpha_mat = tuple(tuple(_poly(nvars, c) for c in row) for row in alpha_mat)
        self.anchor_mat = tuple(tuple(_poly(nvars, c) for c in row) for row in anchor_mat)
        if len(self.alpha_mat) != rank or any(len(r) != rank for r in self.alpha_mat):
            raise DimensionError(f"alpha_mat must be {rank} x {rank}")
        if len(self.anchor_mat) != rank or any(len(r) != nvars for r in self.anchor_mat):
            raise DimensionError(f"anchor_mat must be {rank} x {nvars}")
        consts = {}
        for (a, b, c), v in bracket_consts.items():
            if not all(0 <= t < rank for t in (a, b, c)):
                raise DimensionError(f"bracket index {(a, b, c)} out of range for rank {rank}")
            v = _poly(nvars, v)
            if v:
                consts[(a, b, c)] = v
        self.bracket_consts = consts
        self._engine: Optional[HomGerstenhaberModel] = None

    # -- structure data ---------------------------------------------------

    def structure_data(self):
        return (self.nvars, self.rank, self.phi.images, self.alpha_mat, self.anchor_mat,
                tuple(sorted(self.bracket_consts.items())))

    def __eq__(self, other):
        if not isinstance(other, HomLieAlgebroidModel):
            return NotImplemented
        return self.structure_data() == other.structure_data()

    def __hash__(self):
        return hash(self.structure_data())

    def first_difference(self, other: "HomLieAlgebroidModel") -> Optional[str]:
        """Description of the first differing structure entry, or None."""
        if (self.nvars, self.rank) != (other.nvars, other.rank):
            return f"shape (n={self.nvars}, r={self.rank}) vs (n={other.nvars}, r={other.rank})"
        for i, (p, q) in enumerate(zip(self.phi.images, other.phi.images)):
            if p != q:
                return f"phi[{i}]: {p} vs {q}"
        for label, m1, m2 in (("alpha_mat", self.alpha_mat, other.alpha_mat),
                              ("anchor_mat", self.anchor_mat, other.anchor_mat)):
            for i, (r1, r2) in enumerate(zip(m1, m2)):
                for j, (p, q) in enumerate(zip(r1, r2)):
                    if p != q:
                        return f"{label}[{i}][{j}]: {p} vs {q}"
        zero = Polynomial.zero(self.nvars)
        for key in sorted(set(self.bracket_consts) | set(other.bracket_consts)):
            p, q = self.bracket_consts.get(key, zero), other.bracket_consts.get(key, zero)
            if p != q:
                return f"bracket_consts{list(key)}: {p} vs {q}"
        return None

    def replace(self, **changes) -> "HomLieAlgebroidModel":
        fields = dict(nvars=self.nvars, rank=self.rank, phi=self.phi, alpha_mat=self.alpha_mat,
                      anchor_mat=self.anchor_mat, bracket_consts=self.bracket_consts, name=self.name)
        fields.update(changes)
        return HomLieAlgebroidModel(**fields)

    # -- operations -------------------------------------------------------

    def engine(self) -> HomGerstenhaberModel:
        if self._engine is None:
            r, n = self.rank, self.nvars
            images = [Multivector(r, n, {(b,): self.alpha_mat[a][b] for b in range(r)}) for a in range(r)]
            gens: Dict[Tuple[int, int], Dict[Tuple[int], Polynomial]] = {}
            for (a, b, c), v in self.bracket_consts.items():
                gens.setdefault((a, b), {})[(c,)] = v
            brackets = {k: Multivector(r, n, v) for k, v in gens.items()}
            self._engine = HomGerstenhaberModel(r, n, images, brackets, self.anchor_mat, self.phi,
                                                name=f"Γ(∧A) {self.name}".strip())
        return self._engine

    def section(self, coeffs: Sequence) -> Section:
        if len(coeffs) != self.rank:
            raise DimensionError(f"a section needs {self.rank} coefficients")
        return Multivector(self.rank, self.nvars, {(a,): _poly(self.nvars, c) for a, c in enumerate(coeffs)})

    def generator(self, a: int) -> Section:
        return Multivector.basis(self.rank, (a,), self.nvars)

    def _check_section(self, X: Section):
        if (X.rank, X.nvars) != (self.rank, self.nvars) or X.degrees() - {1}:
            raise DimensionError("not a section of this bundle")

    def anchor_apply(self, X: Section, F: Polynomial) -> Polynomial:
        self._check_section(X)
        if F.nvars != self.nvars:
            raise DimensionError("function on the wrong base")
        return self.engine().rho(X, F)

    def bracket_sections(self, X: Section, Y: Section) -> Section:
        self._check_section(X)
        self._check_section(Y)
        return self.engine().bracket(X, Y)

    def alpha_section(self, X: Section) -> Section:
        return self.engine().alpha(X)

    def __repr__(self):
        return f"HomLieAlgebroidModel({self.name or 'unnamed'}, n={self.nvars}, r={self.rank})"


def _poly(nvars: int, c) -> Polynomial:
    if isinstance(c, Polynomial):
        if c.nvars != nvars:
            raise DimensionError(f"polynomial in {c.nvars} variables, expected {nvars}")
        return c
    return Polynomial.constant(nvars, c)


# ---------------------------------------------------------------- axioms


def hom_jacobiator_sections(m: HomLieAlgebroidModel, X: Section, Y: Section, Z: Section) -> Section:
    br, al = m.bracket_sections, m.alpha_section
    return br(al(X), br(Y, Z)) + br(al(Y), br(Z, X)) + br(al(Z), br(X, Y))


def check_algebroid(m: HomLieAlgebroidModel, degree_bound: int = 3) -> CheckReport:
    """The four hom-Lie algebroid axioms on generators and monomials.

    Axiom 2 is checked on the families that suffice for the correspondence:
    three frame sections, and two frame sections with a monomial multiple of
    a third.  Axiom 4 uses monomials F of degree <= degree_bound.
    """
    report = CheckReport(name=f"hom-Lie algebroid {m.name}".strip())
    report.notes["degree_bound"] = degree_bound
    r, n = m.rank, m.nvars
    phi = m.phi
    gens = [m.generator(a) for a in range(r)]
    monos = [Polynomial.monomial(e) for e in monomials_up_to(n, degree_bound)]
    nonconst = [F for F in monos if F.degree() > 0]
    coords = [Polynomial.var(n, i) for i in range(n)]
    br, al, rho = m.bracket_sections, m.alpha_section, m.anchor_apply
    zero = Multivector.zero(r, n)
    for ident in ("alpha_module_twist", "bracket_skew", "alpha_bracket_morphism", "hom_jacobi",
                  "hom_leibniz", "rep_alpha", "rep_bracket"):
        report.touch(ident)

    alpha_gens = [al(X) for X in gens]
    for a, F in product(range(r), monos):
        report.record("alpha_module_twist", (F, gens[a]), al(gens[a] * F), alpha_gens[a] * phi(F))

    for a, b in combinations_with_replacement(range(r), 2):
        report.record("bracket_skew", (gens[a], gens[b]), br(gens[a], gens[b]), -br(gens[b], gens[a]))

    for a, b, F in product(range(r), range(r), monos):
        Y = gens[b] * F
        report.record("alpha_bracket_morphism", (gens[a], Y), al(br(gens[a], Y)), br(alpha_gens[a], al(Y)))

    for a, b, c in combinations(range(r), 3):
        report.record("hom_jacobi", (gens[a], gens[b], gens[c]),
                      hom_jacobiator_sections(m, gens[a], gens[b], gens[c]), zero)
    for (a, b), c, F in product(combinations(range(r), 2), range(r), nonconst):
        Z = gens[c] * F
        report.record("hom_jacobi", (gens[a], gens[b], Z), hom_jacobiator_sections(m, gens[a], gens[b], Z), zero)

    for a, b, F in product(range(r), range(r), monos):
        X, Y = gens[a], gens[b]
        report.record("hom_leibniz", (X, F, Y), br(X, Y * F), br(X, Y) * phi(F) + al(Y) * rho(X, F))

    for a, F in product(range(r), monos):
        report.record("rep_alpha", (gens[a], F), rho(alpha_gens[a], phi(F)), phi(rho(gens[a], F)))

    seconds = list(gens) + [gens[b] * x for b in range(r) for x in coords]
    for X, Y in product(gens, seconds):
        XY = br(X, Y)
        aX, aY = al(X), al(Y)
        for F in monos:
            lhs = rho(XY, phi(F)) if XY else Polynomial.zero(n)
            rhs = rho(aX, rho(Y, F)) - rho(aY, rho(X, F))
            report.record("rep_bracket", (X, Y, F), lhs, rhs)
    return report


def _require(report: CheckReport, message: str) -> None:
    if not report.passed:
        raise AxiomError(message, report)


# ---------------------------------------------------------------- the correspondence


def algebroid_to_gerstenhaber(m: HomLieAlgebroidModel, validate: bool = True,
                              degree_bound: int = 3) -> HomGerstenhaberModel:
    """The hom-Gerstenhaber bracket on Γ(∧A) determined by the algebroid."""
    if validate:
        _require(check_algebroid(m, degree_bound), "the input is not a hom-Lie algebroid")
    return m.engine()


def gerstenhaber_to_algebroid(gm: HomGerstenhaberModel, validate: bool = True, max_degree: int = 3,
                              coeff_degree: int = 1) -> HomLieAlgebroidModel:
    """Restrict the bracket to sections and read the anchor off {X, F}."""
    if validate:
        report = check_graded_hom_jacobi(gm, max_degree, coeff_degree)
        report.merge(check_hom_leibniz(gm, max_degree, coeff_degree))
        _require(report, "the input is not a hom-Gerstenhaber algebra")
    data = extract_anchor_rep(gm)
    r, n = data.rank, data.nvars
    alpha_mat = [[data.alpha_images[a].coeff((b,)) for b in range(r)] for a in range(r)]
    consts = {(a, b, c): v.coeff((c,)) for (a, b), v in data.bracket.items() for c in range(r) if v.coeff((c,))}
    out = HomLieAlgebroidModel(n, r, data.phi, alpha_mat, data.anchor, consts, name=gm.name)
    if validate:
        _require(check_algebroid(out), "extracted data is not a hom-Lie algebroid")
    return out


def check_gerstenhaber_side(m: HomLieAlgebroidModel, max_degree: int = 3, coeff_degree: int = 1) -> CheckReport:
    """Graded hom-Jacobi and hom-Leibniz of the induced bracket on Γ(∧A)."""
    gm = algebroid_to_gerstenhaber(m, validate=False)
    report = check_graded_hom_jacobi(gm, max_degree, coeff_degree)
    report.merge(check_hom_leibniz(gm, max_degree, coeff_degree))
    report.name = f"hom-Gerstenhaber Γ(∧A) {m.name}".strip()
    return report


# ---------------------------------------------------------------- constructions


def point_algebroid(g: HomLieAlgebra) -> HomLieAlgebroidModel:
    """A hom-Lie algebra as an algebroid over a point."""
    r = g.dim
    alpha_mat = [[g.alpha[b, a] for b in range(r)] for a in range(r)]
    return HomLieAlgebroidModel(0, r, PolySubstitution([], 0), alpha_mat, [[] for _ in range(r)],
                                dict(g.bracket.entries), name=g.name)


def tangent_algebroid(nvars: int) -> HomLieAlgebroidModel:
    """TQ^n with the coordinate frame: phi = id, alpha = id, C = 0, identity anchor."""
    ident = [[1 if a == b else 0 for b in range(nvars)] for a in range(nvars)]
    return HomLieAlgebroidModel(nvars, nvars, PolySubstitution.identity(nvars), ident, ident, {},
                                name=f"TQ^{nvars}")


def check_action(g: HomLieAlgebra, phi: PolySubstitution, delta: Sequence[PhiDerivation],
                 degree_bound: int = 3) -> CheckReport:
    """(delta, phi*) as a representation of g on polynomials of degree <= degree_bound."""
    if len(delta) != g.dim:
        raise DimensionError(f"need one derivation per basis vector, got {len(delta)} for dimension {g.dim}")
    for d in delta:
        if d.phi != phi:
            raise DimensionError("every derivation must be twisted by the same base map")
    n = phi.nvars
    report = CheckReport(name="hom-Lie action")
    report.merge(check_hom_jacobi(g))
    report.name = "hom-Lie action"
    monos = [Polynomial.monomial(e) for e in monomials_up_to(n, degree_bound)]
    e = g.basis()

    def act(v, F):
        out = Polynomial.zero(n)
        for k, c in enumerate(v.coeffs):
            if c:
                out = out + delta[k](F).scale(c)
        return out

    report.touch("rep_alpha")
    report.touch("rep_bracket")
    for a, F in product(range(g.dim), monos):
        report.record("rep_alpha", (e[a], F), act(g.alpha.apply(e[a]), phi(F)), phi(delta[a](F)))
    for a, b, F in product(range(g.dim), range(g.dim), monos):
        lhs = act(g.br(e[a], e[b]), phi(F))
        rhs = act(g.alpha.apply(e[a]), delta[b](F)) - act(g.alpha.apply(e[b]), delta[a](F))
        report.record("rep_bracket", (e[a], e[b], F), lhs, rhs)
    return report


def action_algebroid(g: HomLieAlgebra, phi: PolySubstitution, delta: Sequence[PhiDerivation],
                     degree_bound: int = 3, validate: bool = True) -> HomLieAlgebroidModel:
    """Trivial bundle Q^n x g with constant structure constants and anchor delta."""
    if validate:
        _require(check_action(g, phi, delta, degree_bound), "(delta, phi*) is not a representation of g")
    r, n = g.dim, phi.nvars
    alpha_mat = [[g.alpha[b, a] for b in range(r)] for a in range(r)]
    anchor = [list(d.components) for d in delta]
    consts = {k: Polynomial.constant(n, v) for k, v in g.bracket.entries.items()}
    return HomLieAlgebroidModel(n, r, phi, [[Polynomial.constant(n, c) for c in row] for row in alpha_mat],
                                anchor, consts, name=f"action of {g.name}".strip() if g.name else "action")


def compose_algebroid(base: HomLieAlgebroidModel, phi: PolySubstitution,
                      alpha_mat: Sequence[Sequence[Polynomial]], name: str = "",
                      validate: bool = True, degree_bound: int = 3) -> HomLieAlgebroidModel:
    """Hom-Lie algebroid obtained by composing an untwisted algebroid with (phi, alpha).

    The new bracket is alpha o [ , ] and the new anchor is phi* o rho, i.e.
    C'_ab = sum_c phi*(C_ab^c) alpha(e_c) and anchor'_ai = phi*(anchor_ai).
    """
    if not base.phi.is_identity() or any(base.alpha_mat[a][b] != (1 if a == b else 0)
                                         for a in range(base.rank) for b in range(base.rank)):
        raise ValueError("composition starts from an algebroid with phi = id and alpha = id")
    r, n = base.rank, base.nvars
    alpha_mat = [[_poly(n, c) for c in row] for row in alpha_mat]
    consts: Dict[Tuple[int, int, int], Polynomial] = {}
    for (a, b, c), v in base.bracket_consts.items():
        pv = phi(v)
        for d in range(r):
            if alpha_mat[c][d]:
                consts[(a, b, d)] = consts.get((a, b, d), Polynomial.zero(n)) + pv * alpha_mat[c][d]
    anchor = [[phi(c) for c in row] for row in base.anchor_mat]
    out = HomLieAlgebroidModel(n, r, phi, alpha_mat, anchor, consts, name=name)
    if validate:
        _require(check_algebroid(out, degree_bound), "the composed structure is not a hom-Lie algebroid")
    return out


def check_preserves_vector_field(V: Sequence[Polynomial], phi: PolySubstitution) -> CheckReport:
    """phi*(V[F]) == V[phi* F]; checking F = x_i suffices: phi*(V^i) == V[phi^i]."""
    report = CheckReport(name="phi preserves V")
    report.touch("preserves_vector_field")
    field = MultivectorField.vector_field(V)
    for i, img in enumerate(phi.images):
        report.record("preserves_vector_field", (f"x{i + 1}",), phi(V[i]), apply_vector_field(field, img))
    return report


def line_bundle_algebroid(V: Sequence[Polynomial], phi: PolySubstitution, validate: bool = True,
                          degree_bound: int = 3) -> HomLieAlgebroidModel:
    """Rank-1 algebroid [F, G] = F V[G] - G V[F], anchor F V, composed with phi*."""
    V = list(V)
    n = phi.nvars
    if len(V) != n:
        raise DimensionError("vector field and map live on different spaces")
    _require(check_preserves_vector_field(V, phi), "phi does not preserve the vector field")
    base = HomLieAlgebroidModel(n, 1, PolySubstitution.identity(n), [[1]], [V], {}, name="line bundle")
    return compose_algebroid(base, phi, [[1]], name="line bundle", validate=validate, degree_bound=degree_bound)


def cotangent_prealgebroid(pi: Multivector) -> HomLieAlgebroidModel:
    """T*Q^n on the frame dx_i: anchor pi#, bracket [dx_i, dx_j]_pi."""
    n = pi.nvars
    mat = bivector_matrix(pi)
    dx = [Form(n, {(i,): 1}) for i in range(n)]
    consts = {}
    for i, j in product(range(n), repeat=2):
        v = koszul_bracket(pi, dx[i], dx[j])
        for (k,), c in v.terms.items():
            consts[(i, j, k)] = c
    ident = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    return HomLieAlgebroidModel(n, n, PolySubstitution.identity(n), ident, mat, consts, name="cotangent")


def cotangent_algebroid(pi: Multivector, phi: PolySubstitution, validate: bool = True,
                        degree_bound: int = 3) -> HomLieAlgebroidModel:
    """phi* composed with the cotangent pre-Lie algebroid of a hom-Poisson manifold."""
    _require(check_hom_poisson_manifold(pi, phi), "(pi, phi) is not a hom-Poisson manifold")
    n = pi.nvars
    alpha_mat = [[poly_partial(phi.images[i], j) for j in range(n)] for i in range(n)]
    return compose_algebroid(cotangent_prealgebroid(pi), phi, alpha_mat, name="cotangent",
                             validate=validate, degree_bound=degree_bound)
