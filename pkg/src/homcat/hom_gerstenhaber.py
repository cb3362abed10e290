"""Hom-Gerstenhaber brackets on free graded commutative algebras.

One engine covers the three cases that occur in practice:

* the exterior algebra of a vector space with a skew bracket (no functions);
* ``∧g ⊗ S(V)`` for a representation of a hom-Lie algebra on V, where S(V)
  is modelled by polynomials in coordinates v_1..v_m;
* sections ``Γ(∧A)`` of a hom-Lie algebroid with a polynomial base.

A model is fixed by generator data: the images ``alpha(e_a)``, a polynomial
map ``phi`` acting on degree-0 elements, bracket values ``{e_a, e_b}`` and an
anchor matrix, with ``{e_a, F} = sum_i anchor[a][i] * phi*(d_i F)``.  Every
other bracket value follows from the extension rule

    {X_1^..^X_p, Y_1^..^Y_q} = sum_{s,t} (-1)^(s+t) {X_s, Y_t} ^ alpha(rest)
    {X_1^..^X_p, G}          = sum_s (-1)^(p-s) rho(X_s)[G] alpha(rest)

and graded skew-symmetry.  The function-slot sign (-1)^(p-s) is the one
forced by the hom-Leibniz rule together with graded skew-symmetry.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import AxiomError, DimensionError
from .exact_poly import Exponents, Polynomial, PolySubstitution, monomials_up_to, poly_partial
from .hom_algebras import HomLieAlgebra, Representation, check_representation
from .multilinear import (ExteriorEndomorphism, ExtIndex, Multivector, QMatrix, StructureConstants,
                          exterior_basis, is_bracket_automorphism)
from .report import CheckReport

BasisKey = Tuple[ExtIndex, Exponents]


def shifted_sign(i: int, j: int) -> int:
    """(-1)^((i-1)(j-1))."""
    return -1 if (i - 1) * (j - 1) % 2 else 1


class HomGerstenhaberModel:
    """Hom-Gerstenhaber bracket on ``∧(Q^rank) ⊗ Q[x_1..x_nvars]``.

    ``alpha_images[a]`` is alpha(e_a), a degree-1 element; ``bracket_gen`` maps
    (a, b) to {e_a, e_b}; ``anchor[a][i]`` are polynomials.  ``overrides`` lets a
    caller replace the bracket of individual basis elements
    (``(I, m) -> (J, n) -> value``), which is how hand-corrupted tables are
    produced for negative tests.
    """

    def __init__(self, rank: int, nvars: int, alpha_images: Sequence[Multivector],
                 bracket_gen: Mapping[Tuple[int, int], Multivector],
                 anchor: Optional[Sequence[Sequence[Polynomial]]] = None,
                 phi: Optional[PolySubstitution] = None, name: str = "",
                 overrides: Optional[Mapping[Tuple[BasisKey, BasisKey], Multivector]] = None):
        self.rank = rank
        self.nvars = nvars
        self.name = name
        self.phi = PolySubstitution.identity(nvars) if phi is None else phi
        if self.phi.nvars != nvars:
            raise DimensionError("phi acts on the wrong polynomial ring")
        if len(alpha_images) != rank:
            raise DimensionError(f"need {rank} generator images, got {len(alpha_images)}")
        self.alpha_images = tuple(alpha_images)
        self._alpha = ExteriorEndomorphism(self.alpha_images, self.phi if nvars else None, rank=rank, nvars=nvars)
        zero1 = Multivector.zero(rank, nvars)
        self.bracket_gen: Dict[Tuple[int, int], Multivector] = {}
        for (a, b), v in bracket_gen.items():
            if not (0 <= a < rank and 0 <= b < rank):
                raise DimensionError(f"generator pair {(a, b)} out of range")
            if (v.rank, v.nvars) != (rank, nvars) or v.degrees() - {1}:
                raise DimensionError("generator brackets must be degree-1 elements of the algebra")
            if v:
                self.bracket_gen[(a, b)] = v
        self._zero = zero1
        if anchor is None:
            anchor = [[Polynomial.zero(nvars)] * nvars for _ in range(rank)]
        if len(anchor) != rank or any(len(row) != nvars for row in anchor):
            raise DimensionError(f"anchor must be a {rank} x {nvars} matrix")
        self.anchor = tuple(tuple(row) for row in anchor)
        self.overrides: Dict[Tuple[BasisKey, BasisKey], Multivector] = dict(overrides or {})
        self._cache: Dict[Tuple[BasisKey, BasisKey], Multivector] = {}
        self._rho_cache: Dict[Tuple[int, Exponents], Polynomial] = {}

    # -- basic operations -------------------------------------------------

    def zero(self) -> Multivector:
        return self._zero

    def function(self, F: Polynomial) -> Multivector:
        return Multivector(self.rank, self.nvars, {(): F})

    def generator(self, a: int) -> Multivector:
        return Multivector.basis(self.rank, (a,), self.nvars)

    def element(self, I: Sequence[int], coeff=1) -> Multivector:
        return Multivector.basis(self.rank, tuple(I), self.nvars, coeff)

    def alpha(self, X: Multivector) -> Multivector:
        return self._alpha(X)

    def alpha_power(self, X: Multivector, k: int) -> Multivector:
        for _ in range(k):
            X = self._alpha(X)
        return X

    def alpha_function(self, F: Polynomial) -> Polynomial:
        return self.phi(F) if self.nvars else F

    def gen_bracket(self, a: int, b: int) -> Multivector:
        return self.bracket_gen.get((a, b), self._zero)

    def rho_gen(self, a: int, F: Polynomial) -> Polynomial:
        """{e_a, F} = sum_i anchor[a][i] * phi*(d_i F)."""
        out = Polynomial.zero(self.nvars)
        for exps, c in F.terms.items():
            key = (a, exps)
            v = self._rho_cache.get(key)
            if v is None:
                mono = Polynomial.monomial(exps)
                v = Polynomial.zero(self.nvars)
                for i, coeff in enumerate(self.anchor[a]):
                    if coeff and exps[i]:
                        v = v + coeff * self.phi(poly_partial(mono, i))
                self._rho_cache[key] = v
            out = out + v.scale(c)
        return out

    def with_override(self, left: BasisKey, right: BasisKey, value: Multivector) -> "HomGerstenhaberModel":
        """Copy of the model whose bracket of two basis elements is replaced by ``value``."""
        overrides = dict(self.overrides)
        overrides[(left, right)] = value
        return HomGerstenhaberModel(self.rank, self.nvars, self.alpha_images, self.bracket_gen, self.anchor,
                                    self.phi, f"{self.name} (modified)".strip(), overrides)

    # -- the bracket ------------------------------------------------------

    def _section_bracket(self, F: Polynomial, a: int, G: Polynomial, b: int) -> Multivector:
        """[F e_a, G e_b] = phi*(FG) [e_a,e_b] + phi*F rho_a[G] alpha(e_b) - phi*G rho_b[F] alpha(e_a)."""
        pf, pg = self.alpha_function(F), self.alpha_function(G)
        out = self.gen_bracket(a, b) * (pf * pg)
        if self.nvars:
            rg = self.rho_gen(a, G)
            if rg:
                out = out + self.alpha_images[b] * (pf * rg)
            rf = self.rho_gen(b, F)
            if rf:
                out = out - self.alpha_images[a] * (pg * rf)
        return out

    def _basis_bracket(self, left: BasisKey, right: BasisKey) -> Multivector:
        key = (left, right)
        if key in self.overrides:
            return self.overrides[key]
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        (I, m1), (J, m2) = left, right
        p, q = len(I), len(J)
        F, G = Polynomial.monomial(m1), Polynomial.monomial(m2)
        one = Polynomial.one(self.nvars)
        out = self._zero
        if p and q:
            for s in range(p):
                Xs = F if s == 0 else one
                restI = I[:s] + I[s + 1:]
                for t in range(q):
                    Yt = G if t == 0 else one
                    br = self._section_bracket(Xs, I[s], Yt, J[t])
                    if not br:
                        continue
                    restJ = J[:t] + J[t + 1:]
                    rest_coeff = (one if s == 0 else F) * (one if t == 0 else G)
                    rest = self._alpha.basis_image(restI).wedge(self._alpha.basis_image(restJ))
                    term = br.wedge(rest) * self.alpha_function(rest_coeff)
                    out = out - term if (s + t) % 2 else out + term
        elif p and self.nvars:
            pf = self.alpha_function(F)
            for s in range(p):
                r = self.rho_gen(I[s], G)
                if not r:
                    continue
                term = self._alpha.basis_image(I[:s] + I[s + 1:]) * (pf * r)
                out = out - term if (p - 1 - s) % 2 else out + term
        elif q:
            out = self._basis_bracket(right, left)
            if q % 2:
                out = -out
        self._cache[key] = out
        return out

    def bracket(self, X: Multivector, Y: Multivector) -> Multivector:
        self._check(X)
        self._check(Y)
        out = self._zero
        for I, F in X.terms.items():
            for m1, c1 in F.terms.items():
                for J, G in Y.terms.items():
                    for m2, c2 in G.terms.items():
                        v = self._basis_bracket((I, m1), (J, m2))
                        if v:
                            out = out + v * (c1 * c2)
        return out

    def _check(self, X: Multivector):
        if (X.rank, X.nvars) != (self.rank, self.nvars):
            raise DimensionError("element does not belong to this algebra")

    def rho(self, X: Multivector, F: Polynomial) -> Polynomial:
        """rho(X)[F] := {X, F} for a degree-1 element X."""
        return self.bracket(X, self.function(F)).coeff(())

    def __repr__(self):
        return f"HomGerstenhaberModel({self.name or 'unnamed'}, rank={self.rank}, nvars={self.nvars})"


# ---------------------------------------------------------------- constructors


def _constant_images(alpha: QMatrix, nvars: int) -> List[Multivector]:
    return [Multivector.from_vector(alpha.column(a), nvars) for a in range(alpha.ncols)]


def exterior_gerstenhaber(g: HomLieAlgebra) -> HomGerstenhaberModel:
    """The bracket on ∧g induced by a skew bracket with a compatible alpha.

    Only compatibility is required: the model is meant to be checked, and it
    satisfies the graded hom-Jacobi identity exactly when g is hom-Lie.
    """
    compat = is_bracket_automorphism(g.bracket, g.alpha)
    if not compat.passed:
        raise AxiomError("alpha is not an automorphism of the bracket", compat)
    n = g.dim
    gens = {(a, b): Multivector.from_vector(g.bracket.value(a, b)) for a in range(n) for b in range(n)}
    return HomGerstenhaberModel(n, 0, _constant_images(g.alpha, 0), gens, name=f"∧{g.name}" if g.name else "∧g")


def representation_alpha(r: Representation) -> PolySubstitution:
    """alpha_V extended to S(V): v_i -> alpha_V(v_i) = sum_j alpha_V[j][i] v_j."""
    m = r.space_dim
    return PolySubstitution.linear(r.alpha_v.transpose().rows) if m else PolySubstitution([], 0)


def mixed_gerstenhaber(g: HomLieAlgebra, r: Representation) -> HomGerstenhaberModel:
    """The bracket on ∧g ⊗ S(V), with S(V) as polynomials in v_1..v_m.

    {x, v_1...v_q} = sum_i rho(x)(v_i) alpha(v_1..^v_i..v_q) becomes
    {e_a, F} = sum_i (rho(e_a) v_i) * alpha_V(d_i F).
    """
    report = check_representation(g, r)
    if not report.passed:
        raise AxiomError("not a representation", report)
    compat = is_bracket_automorphism(g.bracket, g.alpha)
    if not compat.passed:
        raise AxiomError("alpha is not an automorphism of the bracket", compat)
    n, m = g.dim, r.space_dim
    gens = {(a, b): Multivector.from_vector(g.bracket.value(a, b), m) for a in range(n) for b in range(n)}
    anchor = []
    for a in range(n):
        row = []
        for i in range(m):
            col = r.rho[a].column(i)
            row.append(Polynomial(m, {tuple(1 if t == k else 0 for t in range(m)): c
                                      for k, c in enumerate(col.coeffs) if c}))
        anchor.append(row)
    return HomGerstenhaberModel(n, m, _constant_images(g.alpha, m), gens, anchor, representation_alpha(r),
                                name=f"∧g⊗S(V) {g.name}".strip())


# ---------------------------------------------------------------- Jacobiator


def _homogeneous_degree(X: Multivector) -> int:
    if not X.is_homogeneous():
        raise ValueError(f"{X} is not homogeneous")
    return X.degree()


def hom_jacobiator(m: HomGerstenhaberModel, X: Multivector, Y: Multivector, Z: Multivector) -> Multivector:
    """Jac(X, Y, Z) with the signs of the graded hom-Jacobi identity on A[1]."""
    i, j, k = (_homogeneous_degree(W) for W in (X, Y, Z))
    br, al = m.bracket, m.alpha
    return (br(al(X), br(Y, Z)) * shifted_sign(i, k) + br(al(Y), br(Z, X)) * shifted_sign(j, i)
            + br(al(Z), br(X, Y)) * shifted_sign(k, j))


def sample_elements(m: HomGerstenhaberModel, max_degree: int, coeff_degree: int = 1) -> List[Multivector]:
    """Basis elements x^m e_I with |I| <= max_degree and deg(x^m) <= coeff_degree."""
    monos = monomials_up_to(m.nvars, coeff_degree)
    return [m.element(I, Polynomial.monomial(e)) for I in exterior_basis(m.rank, max_degree) for e in monos]


def _tuples(samples: List[Multivector], size: int, max_total: int, ordered: bool):
    degs = [X.degree() for X in samples]
    idx = range(len(samples))
    it = product(idx, repeat=size) if ordered else combinations_with_replacement(idx, size)
    for t in it:
        if sum(degs[a] for a in t) <= max_total:
            yield tuple(samples[a] for a in t)


def check_graded_hom_jacobi(m: HomGerstenhaberModel, max_degree: int = 3, coeff_degree: int = 1) -> CheckReport:
    """Graded hom-Lie axioms of A[1] on sample basis elements.

    Checked on basis pairs and triples whose exterior degrees add up to at
    most ``max_degree``: graded skew-symmetry, alpha as a product and bracket
    morphism, and the graded hom-Jacobi identity.  The Jacobiator is
    invariant under cyclic permutations and graded skew once the bracket is,
    so unordered triples suffice.
    """
    report = CheckReport(name=f"graded hom-Jacobi {m.name}".strip())
    report.notes.update(max_degree=max_degree, coeff_degree=coeff_degree)
    samples = sample_elements(m, max_degree, coeff_degree)
    br, al = m.bracket, m.alpha
    for ident in ("graded_skew", "alpha_product_morphism", "alpha_bracket_morphism", "graded_hom_jacobi"):
        report.touch(ident)
    for X, Y in _tuples(samples, 2, max_degree, ordered=False):
        i, j = X.degree(), Y.degree()
        report.record("graded_skew", (X, Y), br(X, Y), -br(Y, X) * shifted_sign(i, j))
    for X, Y in _tuples(samples, 2, max_degree, ordered=True):
        report.record("alpha_product_morphism", (X, Y), al(X.wedge(Y)), al(X).wedge(al(Y)))
        report.record("alpha_bracket_morphism", (X, Y), al(br(X, Y)), br(al(X), al(Y)))
    for X, Y, Z in _tuples(samples, 3, max_degree, ordered=False):
        report.record("graded_hom_jacobi", (X, Y, Z), hom_jacobiator(m, X, Y, Z), m.zero())
    return report


def check_hom_leibniz(m: HomGerstenhaberModel, max_degree: int = 3, coeff_degree: int = 1) -> CheckReport:
    """{X, Y^Z} == {X,Y}^alpha(Z) + (-1)^((i-1)j) alpha(Y)^{X,Z} on sample triples."""
    report = CheckReport(name=f"hom-Leibniz {m.name}".strip())
    report.notes.update(max_degree=max_degree, coeff_degree=coeff_degree)
    report.touch("hom_leibniz")
    samples = sample_elements(m, max_degree, coeff_degree)
    br, al = m.bracket, m.alpha
    for X, Y, Z in _tuples(samples, 3, max_degree, ordered=True):
        i, j = X.degree(), Y.degree()
        lhs = br(X, Y.wedge(Z))
        second = al(Y).wedge(br(X, Z))
        rhs = br(X, Y).wedge(al(Z)) + (-second if (i - 1) * j % 2 else second)
        report.record("hom_leibniz", (X, Y, Z), lhs, rhs)
    return report


def check_jacobiator_leibniz(m: HomGerstenhaberModel, samples: Optional[Sequence[Multivector]] = None,
                             max_degree: int = 4) -> CheckReport:
    """Jac(X^Y, Z, T) == alpha^2(X) Jac(Y, Z, T) + (-1)^(ij) alpha^2(Y) Jac(X, Z, T).

    Runs over ordered quadruples of homogeneous samples whose degrees add up
    to at most ``max_degree`` (basis elements when ``samples`` is None).
    """
    report = CheckReport(name=f"Jacobiator derivation rule {m.name}".strip())
    report.touch("jacobiator_leibniz")
    samples = list(samples) if samples is not None else sample_elements(m, max_degree, 0)
    for W in samples:
        _homogeneous_degree(W)
    for X, Y, Z, T in _tuples(samples, 4, max_degree, ordered=True):
        i, j = X.degree(), Y.degree()
        lhs = hom_jacobiator(m, X.wedge(Y), Z, T)
        second = m.alpha_power(Y, 2).wedge(hom_jacobiator(m, X, Z, T))
        rhs = m.alpha_power(X, 2).wedge(hom_jacobiator(m, Y, Z, T)) + (-second if i * j % 2 else second)
        report.record("jacobiator_leibniz", (X, Y, Z, T), lhs, rhs)
    return report


def check_jacobiator_skew(m: HomGerstenhaberModel, max_degree: int = 4) -> CheckReport:
    """Jac(X, Y, Z) == -(-1)^((i-1)(j-1)) Jac(Y, X, Z) on basis triples."""
    report = CheckReport(name=f"Jacobiator graded skew-symmetry {m.name}".strip())
    report.touch("jacobiator_skew")
    samples = sample_elements(m, max_degree, 0)
    for X, Y, Z in _tuples(samples, 3, max_degree, ordered=True):
        i, j = X.degree(), Y.degree()
        report.record("jacobiator_skew", (X, Y, Z), hom_jacobiator(m, X, Y, Z),
                      -hom_jacobiator(m, Y, X, Z) * shifted_sign(i, j))
    return report


# ---------------------------------------------------------------- anchor extraction


@dataclass(frozen=True)
class ExtractedData:
    """Degree-0 and degree-1 data read off a model by evaluating it.

    ``bracket[(a, b)] = {e_a, e_b}``, ``alpha_images[a] = alpha(e_a)``,
    ``phi`` is alpha restricted to functions and ``anchor[a][i] = {e_a, x_i}``.
    """

    rank: int
    nvars: int
    bracket: Dict[Tuple[int, int], Multivector]
    alpha_images: Tuple[Multivector, ...]
    phi: PolySubstitution
    anchor: Tuple[Tuple[Polynomial, ...], ...]

    def as_hom_lie(self) -> HomLieAlgebra:
        """Only meaningful over a point, where degree 1 is finite dimensional."""
        if self.nvars:
            raise ValueError("degree-1 part is a module over polynomials, not a finite-dimensional algebra")
        r = self.rank
        entries = {(a, b, c): v.coeff((c,)).constant_value()
                   for (a, b), v in self.bracket.items() for c in range(r) if v.coeff((c,))}
        alpha = QMatrix.from_columns([v.to_vector() for v in self.alpha_images], r) if r else QMatrix.zero(0)
        return HomLieAlgebra(StructureConstants(r, entries), alpha)


def extract_anchor_rep(m: HomGerstenhaberModel) -> ExtractedData:
    """rho(X)[F] := {X, F}; on coordinates this gives the anchor matrix."""
    r, n = m.rank, m.nvars
    gens = [m.generator(a) for a in range(r)]
    bracket = {}
    for a, b in product(range(r), repeat=2):
        v = m.bracket(gens[a], gens[b])
        if v.degrees() - {1}:
            raise AxiomError(f"bracket of generators e{a + 1}, e{b + 1} is not of degree 1")
        if v:
            bracket[(a, b)] = v
    coords = [Polynomial.var(n, i) for i in range(n)]
    anchor = []
    for a in range(r):
        row = []
        for x in coords:
            v = m.bracket(gens[a], m.function(x))
            if v.degrees() - {0}:
                raise AxiomError("bracket of a generator with a function is not a function")
            row.append(v.coeff(()))
        anchor.append(tuple(row))
    images = []
    for g in gens:
        img = m.alpha(g)
        if img.degrees() - {1}:
            raise AxiomError("alpha does not preserve degree 1")
        images.append(img)
    phi = PolySubstitution([m.alpha(m.function(x)).coeff(()) for x in coords], n)
    return ExtractedData(r, n, bracket, tuple(images), phi, tuple(anchor))


def check_extracted_representation(m: HomGerstenhaberModel, degree_bound: int = 3) -> CheckReport:
    """The conclusions of the anchor proposition, evaluated on the model.

    With rho(X)[F] = {X, F}: alpha|0 is multiplicative, rho(X) is an
    alpha|0-derivation, degree 1 is hom-Lie on generators, and

        alpha(rho(X)[F]) == rho(alpha X)[alpha F]
        rho({X, Y})[alpha F] == rho(alpha X)[rho(Y) F] - rho(alpha Y)[rho(X) F]

    for generators X, Y and monomials F of degree <= degree_bound.
    """
    report = CheckReport(name=f"extracted representation {m.name}".strip())
    report.notes["degree_bound"] = degree_bound
    r, n = m.rank, m.nvars
    gens = [m.generator(a) for a in range(r)]
    monos = [Polynomial.monomial(e) for e in monomials_up_to(n, degree_bound)]
    af = m.alpha_function
    zero0 = Polynomial.zero(n)
    for ident in ("alpha0_multiplicative", "rho_derivation", "degree1_hom_jacobi", "rep_alpha", "rep_bracket"):
        report.touch(ident)
    for F, G in combinations_with_replacement(monos, 2):
        report.record("alpha0_multiplicative", (F, G), af(F * G), af(F) * af(G))
        if F.degree() + G.degree() <= degree_bound:
            for X in gens:
                report.record("rho_derivation", (X, F, G), m.rho(X, F * G),
                              af(F) * m.rho(X, G) + af(G) * m.rho(X, F))
    for a, b, c in combinations_with_replacement(range(r), 3):
        X, Y, Z = gens[a], gens[b], gens[c]
        report.record("degree1_hom_jacobi", (X, Y, Z), hom_jacobiator(m, X, Y, Z), m.zero())
    for X in gens:
        for F in monos:
            report.record("rep_alpha", (X, F), af(m.rho(X, F)), m.rho(m.alpha(X), af(F)))
    for X, Y in product(gens, repeat=2):
        XY = m.bracket(X, Y)
        for F in monos:
            lhs = m.rho(XY, af(F)) if XY else zero0
            rhs = m.rho(m.alpha(X), m.rho(Y, F)) - m.rho(m.alpha(Y), m.rho(X, F))
            report.record("rep_bracket", (X, Y, F), lhs, rhs)
    return report
