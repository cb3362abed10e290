"""Reference structures used by the tests and shipped as JSON files.

``python -m homcat.fixtures DIR`` regenerates the bundled files.
"""
from __future__ import annotations

import os
import sys
from fractions import Fraction
from typing import Callable, Dict

from .exact_poly import Polynomial, PolySubstitution
from .hom_algebras import (HomAssociativeAlgebra, HomLieAlgebra, Representation, adjoint_rep,
                           composition_hom_associative, composition_hom_lie)
from .hom_algebroids import (HomLieAlgebroidModel, PhiDerivation, action_algebroid, cotangent_algebroid,
                             line_bundle_algebroid, point_algebroid, tangent_algebroid)
from .multilinear import QMatrix, StructureConstants
from .poly_geometry import MultivectorField
from . import serialize as ser

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "data")


# ---------------------------------------------------------------- algebras


def sl2() -> HomLieAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    c = StructureConstants.skew(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    return HomLieAlgebra(c, QMatrix.identity(3), "sl2")


def sl2_automorphism() -> QMatrix:
    """h -> h, e -> 4e, f -> f/4."""
    return QMatrix.diag([1, 4, Fraction(1, 4)])


def sl2_composition() -> HomLieAlgebra:
    g = composition_hom_lie(sl2().bracket, sl2_automorphism())
    return HomLieAlgebra(g.bracket, g.alpha, "sl2 composed with e->4e, f->f/4")


def heisenberg(alpha=(2, 3, 6)) -> HomLieAlgebra:
    """[e1, e2] = e3 with a diagonal twisting map."""
    return HomLieAlgebra(StructureConstants.skew(3, {(0, 1): {2: 1}}), QMatrix.diag(list(alpha)),
                         f"heisenberg alpha=diag{tuple(alpha)}")


def non_lie() -> HomLieAlgebra:
    """[e1,e2] = e3, [e1,e3] = e1 with alpha = id; the Jacobiator at (e1,e2,e3) is e3."""
    return HomLieAlgebra(StructureConstants.skew(3, {(0, 1): {2: 1}, (0, 2): {0: 1}}), QMatrix.identity(3),
                         "non-Lie bracket")


def non_lie_projected() -> HomLieAlgebra:
    """The non-Lie bracket composed with the projection onto span(e2), an abelian image."""
    p = QMatrix([[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    g = composition_hom_lie(non_lie().bracket, p)
    return HomLieAlgebra(g.bracket, g.alpha, "non-Lie bracket composed with a projection")


def abelian(n: int = 2) -> HomLieAlgebra:
    return HomLieAlgebra(StructureConstants(n), QMatrix.diag(list(range(1, n + 1))), f"abelian dim {n}")


def matrix_algebra_2() -> HomAssociativeAlgebra:
    """Full 2x2 matrices on (E11, E12, E21, E22), alpha = id."""
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    entries = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                entries[(a, b, idx[(i, l)])] = 1
    return HomAssociativeAlgebra(StructureConstants(4, entries), QMatrix.identity(4), "2x2 matrices")


def upper_triangular_product() -> StructureConstants:
    """Upper-triangular 2x2 matrices on (E11, E12, E22)."""
    return StructureConstants(3, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 2, 1): 1, (2, 2, 2): 1})


def upper_triangular_conjugation() -> QMatrix:
    """X -> P X P^-1 with P = [[1,1],[0,1]]: E11 -> E11 - E12, E12 -> E12, E22 -> E12 + E22."""
    return QMatrix.from_columns([
        _vec([1, -1, 0]), _vec([0, 1, 0]), _vec([0, 1, 1]),
    ])


def _vec(c):
    from .multilinear import QVec
    return QVec(c)


def upper_triangular_composed() -> HomAssociativeAlgebra:
    a = composition_hom_associative(upper_triangular_product(), upper_triangular_conjugation())
    return HomAssociativeAlgebra(a.product, a.alpha, "upper-triangular 2x2, composed with conjugation")


def non_associative() -> HomAssociativeAlgebra:
    """e1.e1 = e2, e2.e1 = e1, alpha = id."""
    return HomAssociativeAlgebra(StructureConstants(2, {(0, 0, 1): 1, (1, 0, 0): 1}), QMatrix.identity(2),
                                 "non-associative product")


def heisenberg_adjoint(s: int = 1):
    g = heisenberg()
    return g, adjoint_rep(g, s)


# ---------------------------------------------------------------- geometry


def _vars(n):
    return [Polynomial.var(n, i) for i in range(n)]


def fix_pi2():
    """pi = ∂1∧∂2 on Q^2 with phi = (x1 + x2^2, x2) (Jacobian determinant 1)."""
    x1, x2 = _vars(2)
    return MultivectorField(2, {(0, 1): 1}), PolySubstitution([x1 + x2 ** 2, x2])


def pi2_scaling():
    """pi = ∂1∧∂2 with phi = (2 x1, x2), which does not preserve pi."""
    x1, x2 = _vars(2)
    return MultivectorField(2, {(0, 1): 1}), PolySubstitution([x1.scale(2), x2])


def pi3_non_poisson():
    """pi = ∂1∧∂2 + x2 ∂2∧∂3 on Q^3 with phi = id: [pi, pi] = 2 ∂1∧∂2∧∂3."""
    x1, x2, x3 = _vars(3)
    return MultivectorField(3, {(0, 1): 1, (1, 2): x2}), PolySubstitution.identity(3)


def line_bundle_data():
    """V = ∂1 on Q^1 with the translation phi(x1) = x1 + 1."""
    (x1,) = _vars(1)
    return [Polynomial.one(1)], PolySubstitution([x1 + 1])


def heisenberg_action_data():
    """Heisenberg (alpha = diag(2,3,6)) on Q^1, phi(x) = 2x, delta(e1) F = x^2 F'(2x)."""
    (x,) = _vars(1)
    phi = PolySubstitution([x.scale(2)])
    zero = Polynomial.zero(1)
    return heisenberg(), phi, [PhiDerivation([x * x], phi), PhiDerivation([zero], phi), PhiDerivation([zero], phi)]


def simple_action_data():
    """Heisenberg with alpha = id acting on Q^1 by delta(e1) = d/dx, phi = id."""
    phi = PolySubstitution.identity(1)
    zero = Polynomial.zero(1)
    g = heisenberg((1, 1, 1))
    return g, phi, [PhiDerivation([Polynomial.one(1)], phi), PhiDerivation([zero], phi), PhiDerivation([zero], phi)]


# ---------------------------------------------------------------- algebroids


def tangent_q2() -> HomLieAlgebroidModel:
    return tangent_algebroid(2)


def action_heisenberg() -> HomLieAlgebroidModel:
    g, phi, delta = heisenberg_action_data()
    m = action_algebroid(g, phi, delta)
    return m.replace(name="action of heisenberg on Q^1")


def line_bundle() -> HomLieAlgebroidModel:
    V, phi = line_bundle_data()
    return line_bundle_algebroid(V, phi).replace(name="line bundle V=∂1, phi=x1+1")


def cotangent_pi2() -> HomLieAlgebroidModel:
    pi, phi = fix_pi2()
    return cotangent_algebroid(pi, phi).replace(name="cotangent of pi=∂1∧∂2, phi=(x1+x2^2, x2)")


def point_heisenberg() -> HomLieAlgebroidModel:
    return point_algebroid(heisenberg()).replace(name="heisenberg over a point")


ALGEBROIDS: Dict[str, Callable[[], HomLieAlgebroidModel]] = {
    "tangent_q2": tangent_q2,
    "action_heisenberg": action_heisenberg,
    "line_bundle": line_bundle,
    "cotangent_pi2": cotangent_pi2,
    "point_heisenberg": point_heisenberg,
}

HOM_LIE: Dict[str, Callable[[], HomLieAlgebra]] = {
    "sl2": sl2,
    "sl2_composition": sl2_composition,
    "heisenberg": heisenberg,
    "heisenberg_bad_alpha": lambda: heisenberg((2, 3, 5)),
    "non_lie": non_lie,
    "non_lie_projected": non_lie_projected,
}


# ---------------------------------------------------------------- bundled files


def bundled_files() -> Dict[str, ser.StructureFile]:
    SF = ser.StructureFile
    files: Dict[str, ser.StructureFile] = {}
    for name, make in HOM_LIE.items():
        g = make()
        files[name] = SF("hom_lie_algebra", g.name, ser.hom_lie_payload(g))
    g, phi, delta = heisenberg_action_data()
    files["heisenberg_action"] = SF("hom_lie_algebra", "heisenberg acting on Q^1",
                                    ser.hom_lie_payload(g, (phi, delta)))
    g, phi, delta = simple_action_data()
    files["heisenberg_simple_action"] = SF("hom_lie_algebra", "heisenberg (alpha = id) acting by d/dx",
                                           ser.hom_lie_payload(g, (phi, delta)))
    for name, make in (("matrix2", matrix_algebra_2), ("upper_triangular_composed", upper_triangular_composed),
                       ("non_associative", non_associative)):
        a = make()
        files[name] = SF("hom_associative_algebra", a.name, ser.hom_assoc_payload(a))
    g, r = heisenberg_adjoint(1)
    files["heisenberg_adjoint"] = SF("representation", "adjoint representation ad^1 of heisenberg",
                                     ser.representation_payload(g, r))
    for name, make, meta in (("fix_pi2", fix_pi2, "pi=∂1∧∂2, phi=(x1+x2^2, x2)"),
                             ("pi2_scaling", pi2_scaling, "pi=∂1∧∂2, phi=(2x1, x2)"),
                             ("pi3_non_poisson", pi3_non_poisson, "pi=∂1∧∂2+x2∂2∧∂3, phi=id")):
        pi, phi = make()
        files[name] = SF("bivector_and_map", meta, ser.bivector_payload(pi, phi))
    V, phi = line_bundle_data()
    files["vector_field_d1"] = SF("vector_field_and_map", "V=∂1, phi=x1+1", ser.vector_field_payload(V, phi))
    for name, make in ALGEBROIDS.items():
        m = make()
        files[f"algebroid_{name}"] = SF("hom_lie_algebroid", m.name, ser.algebroid_payload(m))
    return files


def write_bundled(directory: str = FIXTURE_DIR) -> None:
    os.makedirs(directory, exist_ok=True)
    for name, sf in bundled_files().items():
        ser.write(os.path.join(directory, f"{name}.json"), sf)


if __name__ == "__main__":
    write_bundled(sys.argv[1] if len(sys.argv) > 1 else FIXTURE_DIR)
