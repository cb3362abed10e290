"""End-to-end acceptance checks, one test per criterion.

Every comparison is exact over Q.  The terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""
import itertools
import random

from homcat import cli
from homcat import fixtures as fx
from homcat.errors import AxiomError
from homcat.exact_poly import Polynomial, PolySubstitution
from homcat.hom_algebras import (HomLieAlgebra, adjoint_operator, adjoint_rep, check_adjoint_identity,
                                 check_dual_formula, check_hom_jacobi, check_hom_poisson, check_representation,
                                 composition_hom_lie, is_lie_on_image, sym_poisson_from_hom_lie)
from homcat.hom_algebroids import check_algebroid, check_gerstenhaber_side, point_algebroid
from homcat.hom_gerstenhaber import (check_graded_hom_jacobi, check_hom_leibniz, check_jacobiator_leibniz,
                                     check_jacobiator_skew, exterior_gerstenhaber)
from homcat.multilinear import QMatrix
from homcat.poly_geometry import check_hom_poisson_manifold, schouten

from helpers import matmul_oracle, rand_field, rand_graded_pair, rand_hom_lie_candidate, rand_skew_bracket, \
    schouten_oracle


def fixture_pairs():
    pairs = [(name, make().bracket, make().alpha) for name, make in fx.HOM_LIE.items()
             if name != "heisenberg_bad_alpha"]
    pairs.append(("sl2 with automorphism", fx.sl2().bracket, fx.sl2_automorphism()))
    pairs.append(("abelian", fx.abelian(3).bracket, fx.abelian(3).alpha))
    return pairs


# ---------------------------------------------------------------- 1


def test_criterion_1_composition_criterion():
    rng = random.Random(20240601)
    cases = list(fixture_pairs())
    for k in range(60):
        dim = rng.randint(2, 4)
        c, a = rand_graded_pair(rng, dim)
        cases.append((f"graded {k}", c, a))
    for k in range(10):
        dim = rng.randint(2, 4)
        c = rand_skew_bracket(rng, dim)
        cases.append((f"alpha=id {k}", c, QMatrix.identity(dim)))
        cases.append((f"alpha=0 {k}", c, QMatrix.zero(dim)))
    verdicts, disagreements = [], []
    for name, c, a in cases:
        lhs = check_hom_jacobi(composition_hom_lie(c, a)).passed
        rhs = is_lie_on_image(c, a).passed
        verdicts.append(lhs)
        if lhs != rhs:
            disagreements.append(name)
    print(f"{len(cases)} pairs, {sum(verdicts)} hom-Lie, disagreements: {disagreements}")
    assert not disagreements
    assert any(verdicts) and not all(verdicts)


# ---------------------------------------------------------------- 2


def test_criterion_2_jacobiator_identity():
    rng = random.Random(7)
    tested = 0
    while tested < 24:
        c, a = rand_graded_pair(rng, rng.randint(2, 3))
        g = HomLieAlgebra(c, a)
        if check_hom_jacobi(g).passed:
            continue
        m = exterior_gerstenhaber(g)
        r5 = check_jacobiator_leibniz(m, max_degree=4)
        rs = check_jacobiator_skew(m, max_degree=4)
        assert r5.passed, r5.summary()
        assert rs.passed, rs.summary()
        assert r5.checked["jacobiator_leibniz"] > 0
        tested += 1
    print(f"{tested} non-Lie compatible brackets checked through total degree 4")


# ---------------------------------------------------------------- 3


def _exterior_verdict(g):
    try:
        m = exterior_gerstenhaber(g)
    except AxiomError:
        return False
    return check_graded_hom_jacobi(m, 3).merge(check_hom_leibniz(m, 3)).passed


def test_criterion_3_exterior_equivalence():
    rng = random.Random(99)
    algebras = [make() for make in fx.HOM_LIE.values()] + [fx.abelian(3)]
    algebras += [rand_hom_lie_candidate(rng, rng.randint(2, 3)) for _ in range(30)]
    verdicts, disagreements = [], []
    for g in algebras:
        lhs = check_hom_jacobi(g).passed
        verdicts.append(lhs)
        if lhs != _exterior_verdict(g):
            disagreements.append(g.name)
    print(f"{len(algebras)} algebras, {sum(verdicts)} hom-Lie, disagreements: {disagreements}")
    assert not disagreements
    assert any(verdicts) and not all(verdicts)


# ---------------------------------------------------------------- 4


def _ad_matrix(g, x, s):
    """[alpha^s x, e_j] as columns, from the structure constants."""
    n = g.dim
    alpha = [list(r) for r in g.alpha.rows]
    ax = list(x)
    for _ in range(s):
        ax = [sum(alpha[i][j] * ax[j] for j in range(n)) for i in range(n)]
    out = [[0] * n for _ in range(n)]
    for (i, j, k), v in g.bracket.entries.items():
        out[k][j] += ax[i] * v
    return out


def _bracket_vec(g, i, j):
    return [g.bracket.entries.get((i, j, k), 0) for k in range(g.dim)]


def test_criterion_4_adjoint_and_representation():
    for make in (fx.sl2, fx.sl2_composition, fx.heisenberg):
        g = make()
        n = g.dim
        alpha = [list(r) for r in g.alpha.rows]
        basis = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
        alpha_cols = [[alpha[k][i] for k in range(n)] for i in range(n)]
        for s in (0, 1, 2):
            for i in range(n):
                assert [list(r) for r in adjoint_operator(g, g.basis()[i], s).rows] == _ad_matrix(g, basis[i], s)
            for i, j in itertools.product(range(n), repeat=2):
                lhs = matmul_oracle(_ad_matrix(g, _bracket_vec(g, i, j), s), alpha)
                a = matmul_oracle(_ad_matrix(g, alpha_cols[i], s), _ad_matrix(g, basis[j], s))
                b = matmul_oracle(_ad_matrix(g, alpha_cols[j], s), _ad_matrix(g, basis[i], s))
                assert lhs == [[p - q for p, q in zip(ra, rb)] for ra, rb in zip(a, b)]
            assert check_adjoint_identity(g, s).passed
            assert check_representation(g, adjoint_rep(g, s)).passed


# ---------------------------------------------------------------- 5


def test_criterion_5_symmetric_algebra_hom_poisson():
    valid = [g for g in (make() for make in fx.HOM_LIE.values()) if check_hom_jacobi(g).passed]
    valid.append(fx.abelian(2))
    assert len(valid) >= 5
    for g in valid:
        r = check_hom_poisson(sym_poisson_from_hom_lie(g), 3)
        assert r.passed, r.summary()
        assert set(r.checked) >= {"bracket_skew", "hom_jacobi", "hom_poisson_leibniz"}
        assert check_dual_formula(g, 3).passed


# ---------------------------------------------------------------- 6


def _corruptions(m):
    """Every structure entry bumped by the constant 1, one at a time."""
    n, r = m.nvars, m.rank
    one = Polynomial.one(n)
    for i in range(n):
        images = list(m.phi.images)
        images[i] = images[i] + one
        yield f"phi[{i}]", m.replace(phi=PolySubstitution(images, n))
    for a, b in itertools.product(range(r), repeat=2):
        alpha = [list(row) for row in m.alpha_mat]
        alpha[a][b] = alpha[a][b] + one
        yield f"alpha_mat[{a}][{b}]", m.replace(alpha_mat=alpha)
    for a, i in itertools.product(range(r), range(n)):
        anchor = [list(row) for row in m.anchor_mat]
        anchor[a][i] = anchor[a][i] + one
        yield f"anchor_mat[{a}][{i}]", m.replace(anchor_mat=anchor)
    for key in itertools.product(range(r), repeat=3):
        consts = dict(m.bracket_consts)
        consts[key] = consts.get(key, Polynomial.zero(n)) + one
        yield f"bracket_consts{list(key)}", m.replace(bracket_consts=consts)


def test_criterion_6_round_trip(capsys):
    names = sorted(fx.ALGEBROIDS)
    assert len(names) >= 5
    for name in names:
        assert cli.main(["roundtrip", f"algebroid_{name}"]) == 0
    capsys.readouterr()
    total, failing, disagreements, still_valid = 0, 0, [], []
    for name in names:
        for label, bad in _corruptions(fx.ALGEBROIDS[name]()):
            a = check_algebroid(bad).passed
            b = check_gerstenhaber_side(bad).passed
            total += 1
            failing += not a and not b
            if a != b:
                disagreements.append(f"{name} {label}")
            elif a:
                still_valid.append(f"{name} {label}")
    with capsys.disabled():
        print(f"\n{total} corruptions, {failing} rejected by both sides, disagreements: {disagreements}")
        print(f"still hom-Lie algebroids on both sides: {still_valid}")
    assert not disagreements
    assert failing > total // 2


# ---------------------------------------------------------------- 7


def test_criterion_7_hom_poisson_manifold_gate():
    assert check_hom_poisson_manifold(*fx.fix_pi2()).passed
    r = check_hom_poisson_manifold(*fx.pi3_non_poisson())
    witnesses = r.witnesses("jacobi_on_image")
    assert witnesses and all(w.lhs != 0 for w in witnesses)
    rng = random.Random(2024)
    for _ in range(25):
        n = rng.randint(1, 3)
        X, Y = rand_field(rng, n, 2), rand_field(rng, n, 2)
        assert schouten(X, Y) == schouten_oracle(X, Y)


# ---------------------------------------------------------------- 8


def _every_checker(path, suites):
    return {s: cli.main(["check", path, "--suite", s]) for s in suites}


def test_criterion_8_classical_reduction(capsys):
    lie_suites = ["hom_lie", "lie_on_image", "exterior", "adjoint", "sym_poisson"]
    sl2 = _every_checker("sl2", lie_suites)
    non_lie = _every_checker("non_lie", lie_suites)
    tangent = _every_checker("algebroid_tangent_q2", ["hom_lie_algebroid", "gerstenhaber"])
    tangent["roundtrip"] = cli.main(["roundtrip", "algebroid_tangent_q2"])
    capsys.readouterr()
    assert fx.sl2().alpha == QMatrix.identity(3) and fx.non_lie().alpha == QMatrix.identity(3)
    assert fx.tangent_q2().phi.is_identity()
    assert set(sl2.values()) == {0}, sl2
    assert set(tangent.values()) == {0}, tangent
    assert set(non_lie.values()) == {1}, non_lie
    assert check_algebroid(point_algebroid(fx.sl2())).passed
    assert not check_algebroid(point_algebroid(fx.non_lie())).passed
