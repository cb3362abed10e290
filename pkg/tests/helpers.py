"""Random generators and independent oracles shared by the test modules.

The oracles here only use plain dicts and Fractions so they do not share
code paths with the library under test.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from homcat.exact_poly import Polynomial, PolySubstitution
from homcat.hom_algebras import HomLieAlgebra
from homcat.multilinear import QMatrix, QVec, StructureConstants
from homcat.poly_geometry import MultivectorField

SMALL = [Fraction(v) for v in (-2, -1, 1, 2)] + [Fraction(1, 2), Fraction(-1, 3)]


# ---------------------------------------------------------------- random data


def rand_rational(rng: random.Random, zero_weight: float = 0.0) -> Fraction:
    if rng.random() < zero_weight:
        return Fraction(0)
    return rng.choice(SMALL)


def rand_poly(rng: random.Random, nvars: int, degree: int, density: float = 0.5) -> Polynomial:
    terms = {}
    for exps in product(range(degree + 1), repeat=nvars):
        if sum(exps) <= degree and rng.random() < density:
            terms[exps] = rng.choice(SMALL)
    return Polynomial(nvars, terms)


def rand_field(rng: random.Random, nvars: int, degree: int, max_deg: int = 3, density: float = 0.4):
    """Random multivector field of a single random exterior degree."""
    k = rng.randint(0, min(max_deg, nvars))
    terms = {}
    for I in combinations(range(nvars), k):
        if rng.random() < 0.7:
            terms[I] = rand_poly(rng, nvars, degree, density)
    return MultivectorField(nvars, terms)


def rand_invertible(rng: random.Random, n: int) -> QMatrix:
    while True:
        m = QMatrix([[rng.choice([-1, 0, 0, 1, 2]) for _ in range(n)] for _ in range(n)])
        if m.is_invertible():
            return m


def inverse(m: QMatrix) -> QMatrix:
    n = m.nrows
    aug = QMatrix([list(m.rows[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)])
    red, _ = aug.rref()
    return QMatrix([row[n:] for row in red.rows])


def conjugate_bracket(c: StructureConstants, p: QMatrix) -> StructureConstants:
    """Transport the bracket along the basis change x -> P x."""
    pinv = inverse(p)
    return StructureConstants.from_function(
        c.dim, lambda i, j: p.apply(c.apply(pinv.column(i), pinv.column(j))))


def rand_graded_pair(rng: random.Random, dim: int):
    """A compatible (skew bracket, alpha), usually not Lie.

    Basis vectors get weights w_i; the bracket only pairs weights additively
    and alpha = diag(lam^w_i), so alpha is compatible for every lam
    (lam = 0 gives the projection onto weight 0).  The pair is then
    conjugated by a random invertible matrix.
    """
    weights = [rng.choice([0, 0, 1, 2]) for _ in range(dim)]
    brackets = {}
    for i, j in combinations(range(dim), 2):
        out = {k: rand_rational(rng, 0.4) for k in range(dim) if weights[k] == weights[i] + weights[j]}
        out = {k: v for k, v in out.items() if v}
        if out:
            brackets[(i, j)] = out
    c = StructureConstants.skew(dim, brackets)
    lam = rng.choice([0, 1, 2, -1, Fraction(1, 2)])
    alpha = QMatrix.diag([Fraction(lam) ** w for w in weights])
    p = rand_invertible(rng, dim)
    return conjugate_bracket(c, p), p @ alpha @ inverse(p)


def rand_skew_bracket(rng: random.Random, dim: int, zero_weight: float = 0.5) -> StructureConstants:
    brackets = {}
    for i, j in combinations(range(dim), 2):
        out = {k: rand_rational(rng, zero_weight) for k in range(dim)}
        out = {k: v for k, v in out.items() if v}
        if out:
            brackets[(i, j)] = out
    return StructureConstants.skew(dim, brackets)


def rand_hom_lie_candidate(rng: random.Random, dim: int) -> HomLieAlgebra:
    """alpha = id with a random skew bracket, or a random graded pair."""
    if rng.random() < 0.5:
        return HomLieAlgebra(rand_skew_bracket(rng, dim), QMatrix.identity(dim), "random")
    c, a = rand_graded_pair(rng, dim)
    return HomLieAlgebra(c, a, "random graded")


def e(n: int, i: int) -> QVec:
    return QVec.basis(n, i)


# ---------------------------------------------------------------- dict polynomials


def dpoly(p: Polynomial) -> dict:
    return dict(p.terms)


def d_add(a: dict, b: dict, s: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
        if not out[k]:
            del out[k]
    return out


def d_mul(a: dict, b: dict) -> dict:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
            if not out[k]:
                del out[k]
    return out


def d_partial(a: dict, i: int) -> dict:
    out = {}
    for k, v in a.items():
        if k[i]:
            kk = list(k)
            kk[i] -= 1
            out[tuple(kk)] = v * k[i]
    return out


# ---------------------------------------------------------------- Schouten oracle


def _sort_sign(seq):
    """Sign of the permutation sorting seq, and the sorted tuple (None if repeated)."""
    if len(set(seq)) != len(seq):
        return 0, None
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def _super_mul(A: dict, B: dict) -> dict:
    """Product of superfunctions {theta-index tuple: dict poly}."""
    out = {}
    for I, a in A.items():
        for J, b in B.items():
            s, K = _sort_sign(I + J)
            if not s:
                continue
            out[K] = d_add(out.get(K, {}), d_mul(a, b), s)
    return {k: v for k, v in out.items() if v}


def _theta_right(A: dict, i: int) -> dict:
    """Right derivative d/dtheta_i: move theta_i to the end, then drop it."""
    out = {}
    for I, a in A.items():
        if i in I:
            pos = I.index(i)
            s = -1 if (len(I) - 1 - pos) % 2 else 1
            K = I[:pos] + I[pos + 1:]
            out[K] = d_add(out.get(K, {}), a, s)
    return {k: v for k, v in out.items() if v}


def _x_partial(A: dict, i: int) -> dict:
    out = {I: d_partial(a, i) for I, a in A.items()}
    return {k: v for k, v in out.items() if v}


def schouten_oracle(X: MultivectorField, Y: MultivectorField) -> MultivectorField:
    """[P, Q] = sum_i dP/dtheta_i * dQ/dx_i - (-1)^((p-1)(q-1)) dQ/dtheta_i * dP/dx_i.

    Both inputs must be homogeneous.  This is the odd-variable formula with
    the theta_i standing for the d_i; it needs no recursion on degrees.
    """
    n = X.nvars
    P = {I: dpoly(c) for I, c in X.terms.items()}
    Q = {I: dpoly(c) for I, c in Y.terms.items()}
    p = X.degree() if P else 0
    q = Y.degree() if Q else 0
    sign = -1 if ((p - 1) * (q - 1)) % 2 else 1
    out = {}
    for i in range(n):
        t1 = _super_mul(_theta_right(P, i), _x_partial(Q, i))
        t2 = _super_mul(_theta_right(Q, i), _x_partial(P, i))
        for K, v in t1.items():
            out[K] = d_add(out.get(K, {}), v)
        for K, v in t2.items():
            out[K] = d_add(out.get(K, {}), v, -sign)
    return MultivectorField(n, {K: Polynomial(n, v) for K, v in out.items() if v})


# ---------------------------------------------------------------- linear-algebra oracles


def bracket_oracle(c: StructureConstants, x, y):
    """sum_ijk x_i y_j c_ij^k with plain lists."""
    n = c.dim
    out = [Fraction(0)] * n
    for (i, j, k), v in c.entries.items():
        out[k] += x[i] * y[j] * v
    return out


def matmul_oracle(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def phi_linear(matrix) -> PolySubstitution:
    return PolySubstitution.linear(matrix)
