"""JSON structure files.

Every file is ``{"kind": ..., "meta": <name>, "payload": {...}}``.  Rationals
are strings ``"p/q"`` (``"p"`` for integers), polynomials are lists of
``[exponents, rational]`` pairs in graded-lexicographic order, matrices are
row-major grids and indices are 0-based.  :func:`dumps` is canonical, so
``dumps(loads(text)) == text`` for any file it produced.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from .errors import FormatError
from .exact_poly import Polynomial, PolySubstitution, format_rational, to_rational
from .hom_algebras import HomAssociativeAlgebra, HomLieAlgebra, Representation
from .hom_algebroids import HomLieAlgebroidModel, PhiDerivation
from .hom_gerstenhaber import HomGerstenhaberModel
from .multilinear import Multivector, QMatrix, StructureConstants

KINDS = (
    "hom_lie_algebra", "hom_associative_algebra", "representation", "bivector_and_map",
    "hom_lie_algebroid", "gerstenhaber_model", "hom_poisson_algebra", "vector_field_and_map",
    "multivector", "form",
)


@dataclass(frozen=True)
class StructureFile:
    kind: str
    meta: str
    payload: Dict[str, Any]


# ---------------------------------------------------------------- primitives


def _fail(msg: str):
    raise FormatError(msg)


def _req(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        _fail(f"{where}: expected an object")
    if key not in obj:
        _fail(f"{where}: missing field {key!r}")
    return obj[key]


def _int(v, where: str, lo: int = 0, hi: int | None = None) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        _fail(f"{where}: expected an integer, got {v!r}")
    if v < lo or (hi is not None and v >= hi):
        _fail(f"{where}: {v} out of range")
    return v


def _list(v, where: str, length: int | None = None) -> list:
    if not isinstance(v, list):
        _fail(f"{where}: expected a list")
    if length is not None and len(v) != length:
        _fail(f"{where}: expected {length} entries, got {len(v)}")
    return v


def rational_from_json(v, where: str = "rational") -> Fraction:
    if not isinstance(v, str):
        _fail(f"{where}: rationals must be strings like \"p/q\", got {v!r}")
    try:
        q = to_rational(v)
    except (ValueError, ZeroDivisionError):
        _fail(f"{where}: malformed rational {v!r}")
    return q


def rational_to_json(q) -> str:
    return format_rational(q)


def poly_to_json(p: Polynomial) -> list:
    return [[list(e), format_rational(c)] for e, c in p.items()]


def poly_from_json(v, nvars: int, where: str = "polynomial") -> Polynomial:
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for t, item in enumerate(_list(v, where)):
        pair = _list(item, f"{where}[{t}]", 2)
        exps = tuple(_int(e, f"{where}[{t}] exponent") for e in _list(pair[0], f"{where}[{t}]", nvars))
        if exps in terms:
            _fail(f"{where}: repeated monomial {list(exps)}")
        terms[exps] = rational_from_json(pair[1], f"{where}[{t}]")
    return Polynomial(nvars, terms)


def matrix_to_json(m: QMatrix) -> list:
    return [[format_rational(x) for x in row] for row in m.rows]


def matrix_from_json(v, n: int, where: str = "matrix", ncols: int | None = None) -> QMatrix:
    ncols = n if ncols is None else ncols
    rows = [[rational_from_json(x, f"{where}[{i}]") for x in _list(row, f"{where}[{i}]", ncols)]
            for i, row in enumerate(_list(v, where, n))]
    return QMatrix(rows, ncols)


def poly_matrix_to_json(m) -> list:
    return [[poly_to_json(p) for p in row] for row in m]


def poly_matrix_from_json(v, rows: int, cols: int, nvars: int, where: str) -> List[List[Polynomial]]:
    return [[poly_from_json(p, nvars, f"{where}[{i}][{j}]") for j, p in enumerate(_list(row, f"{where}[{i}]", cols))]
            for i, row in enumerate(_list(v, where, rows))]


def substitution_to_json(phi: PolySubstitution) -> list:
    return [poly_to_json(p) for p in phi.images]


def substitution_from_json(v, nvars: int, where: str = "phi") -> PolySubstitution:
    return PolySubstitution([poly_from_json(p, nvars, f"{where}[{i}]") for i, p in enumerate(_list(v, where, nvars))],
                            nvars)


def structure_constants_to_json(c: StructureConstants) -> list:
    return [[i, j, k, format_rational(v)] for (i, j, k), v in sorted(c.entries.items())]


def structure_constants_from_json(v, dim: int, where: str = "bracket") -> StructureConstants:
    entries = {}
    for t, item in enumerate(_list(v, where)):
        i, j, k, q = _list(item, f"{where}[{t}]", 4)
        key = tuple(_int(x, f"{where}[{t}]", 0, dim) for x in (i, j, k))
        if key in entries:
            _fail(f"{where}: repeated entry {list(key)}")
        entries[key] = rational_from_json(q, f"{where}[{t}]")
    return StructureConstants(dim, entries)


def poly_consts_to_json(consts: Dict[Tuple[int, int, int], Polynomial]) -> list:
    return [[a, b, c, poly_to_json(v)] for (a, b, c), v in sorted(consts.items())]


def poly_consts_from_json(v, rank: int, nvars: int, where: str) -> Dict[Tuple[int, int, int], Polynomial]:
    out = {}
    for t, item in enumerate(_list(v, where)):
        a, b, c, p = _list(item, f"{where}[{t}]", 4)
        key = tuple(_int(x, f"{where}[{t}]", 0, rank) for x in (a, b, c))
        if key in out:
            _fail(f"{where}: repeated entry {list(key)}")
        out[key] = poly_from_json(p, nvars, f"{where}[{t}]")
    return out


def multivector_to_json(X: Multivector) -> list:
    return [[list(I), poly_to_json(c)] for I, c in X.items()]


def multivector_from_json(v, rank: int, nvars: int, where: str, cls=Multivector):
    terms = {}
    for t, item in enumerate(_list(v, where)):
        idx, p = _list(item, f"{where}[{t}]", 2)
        I = tuple(_int(i, f"{where}[{t}] index", 0, rank) for i in _list(idx, f"{where}[{t}]"))
        if any(b <= a for a, b in zip(I, I[1:])):
            _fail(f"{where}[{t}]: index {list(I)} is not strictly increasing")
        if I in terms:
            _fail(f"{where}: repeated index {list(I)}")
        terms[I] = poly_from_json(p, nvars, f"{where}[{t}]")
    if cls is Multivector:
        return Multivector(rank, nvars, terms)
    return cls(nvars, terms)


# ---------------------------------------------------------------- objects <-> payloads


def hom_lie_payload(g: HomLieAlgebra, action=None) -> dict:
    payload = {"dim": g.dim, "bracket": structure_constants_to_json(g.bracket), "alpha": matrix_to_json(g.alpha)}
    if action is not None:
        phi, delta = action
        payload["action"] = {
            "nvars": phi.nvars,
            "phi": substitution_to_json(phi),
            "delta": [[poly_to_json(c) for c in d.components] for d in delta],
        }
    return payload


def hom_lie_from_payload(p: dict, name: str = "") -> HomLieAlgebra:
    dim = _int(_req(p, "dim", "hom_lie_algebra"), "dim")
    return HomLieAlgebra(structure_constants_from_json(_req(p, "bracket", "hom_lie_algebra"), dim),
                         matrix_from_json(_req(p, "alpha", "hom_lie_algebra"), dim, "alpha"), name)


def action_from_payload(p: dict, dim: int):
    a = _req(p, "action", "hom_lie_algebra")
    n = _int(_req(a, "nvars", "action"), "action.nvars")
    phi = substitution_from_json(_req(a, "phi", "action"), n, "action.phi")
    delta = [PhiDerivation([poly_from_json(c, n, f"action.delta[{i}][{j}]")
                            for j, c in enumerate(_list(row, f"action.delta[{i}]", n))], phi)
             for i, row in enumerate(_list(_req(a, "delta", "action"), "action.delta", dim))]
    return phi, delta


def hom_assoc_payload(a: HomAssociativeAlgebra) -> dict:
    return {"dim": a.dim, "product": structure_constants_to_json(a.product), "alpha": matrix_to_json(a.alpha)}


def hom_assoc_from_payload(p: dict, name: str = "") -> HomAssociativeAlgebra:
    dim = _int(_req(p, "dim", "hom_associative_algebra"), "dim")
    return HomAssociativeAlgebra(structure_constants_from_json(_req(p, "product", "hom_associative_algebra"), dim,
                                                               "product"),
                                 matrix_from_json(_req(p, "alpha", "hom_associative_algebra"), dim, "alpha"), name)


def representation_payload(g: HomLieAlgebra, r: Representation) -> dict:
    return {"algebra": hom_lie_payload(g), "space_dim": r.space_dim,
            "rho": [matrix_to_json(m) for m in r.rho], "alpha_v": matrix_to_json(r.alpha_v)}


def representation_from_payload(p: dict, name: str = "") -> Tuple[HomLieAlgebra, Representation]:
    g = hom_lie_from_payload(_req(p, "algebra", "representation"), name)
    m = _int(_req(p, "space_dim", "representation"), "space_dim")
    rho = [matrix_from_json(x, m, f"rho[{i}]") for i, x in enumerate(_list(_req(p, "rho", "representation"), "rho",
                                                                          g.dim))]
    return g, Representation(tuple(rho), matrix_from_json(_req(p, "alpha_v", "representation"), m, "alpha_v"), name)


def bivector_payload(pi: Multivector, phi: PolySubstitution) -> dict:
    return {"nvars": phi.nvars, "pi": multivector_to_json(pi), "phi": substitution_to_json(phi)}


def bivector_from_payload(p: dict):
    from .poly_geometry import MultivectorField
    n = _int(_req(p, "nvars", "bivector_and_map"), "nvars")
    pi = multivector_from_json(_req(p, "pi", "bivector_and_map"), n, n, "pi", MultivectorField)
    if pi.degrees() - {2}:
        _fail("pi: a bivector must only have terms of degree 2")
    return pi, substitution_from_json(_req(p, "phi", "bivector_and_map"), n)


def vector_field_payload(V: Sequence[Polynomial], phi: PolySubstitution) -> dict:
    return {"nvars": phi.nvars, "V": [poly_to_json(c) for c in V], "phi": substitution_to_json(phi)}


def vector_field_from_payload(p: dict):
    n = _int(_req(p, "nvars", "vector_field_and_map"), "nvars")
    V = [poly_from_json(c, n, f"V[{i}]") for i, c in enumerate(_list(_req(p, "V", "vector_field_and_map"), "V", n))]
    return V, substitution_from_json(_req(p, "phi", "vector_field_and_map"), n)


def algebroid_payload(m: HomLieAlgebroidModel) -> dict:
    return {
        "n": m.nvars, "r": m.rank, "phi": substitution_to_json(m.phi),
        "alpha_mat": poly_matrix_to_json(m.alpha_mat), "anchor_mat": poly_matrix_to_json(m.anchor_mat),
        "bracket_consts": poly_consts_to_json(m.bracket_consts),
    }


def algebroid_from_payload(p: dict, name: str = "") -> HomLieAlgebroidModel:
    n = _int(_req(p, "n", "hom_lie_algebroid"), "n")
    r = _int(_req(p, "r", "hom_lie_algebroid"), "r")
    return HomLieAlgebroidModel(
        n, r, substitution_from_json(_req(p, "phi", "hom_lie_algebroid"), n),
        poly_matrix_from_json(_req(p, "alpha_mat", "hom_lie_algebroid"), r, r, n, "alpha_mat"),
        poly_matrix_from_json(_req(p, "anchor_mat", "hom_lie_algebroid"), r, n, n, "anchor_mat"),
        poly_consts_from_json(_req(p, "bracket_consts", "hom_lie_algebroid"), r, n, "bracket_consts"),
        name=name,
    )


def gerstenhaber_payload(gm: HomGerstenhaberModel) -> dict:
    if gm.overrides:
        raise FormatError("models with overridden bracket entries cannot be serialised")
    r, n = gm.rank, gm.nvars
    consts = {}
    for (a, b), v in gm.bracket_gen.items():
        for (c,), p in v.terms.items():
            consts[(a, b, c)] = p
    return {
        "rank": r, "nvars": n, "phi": substitution_to_json(gm.phi),
        "alpha_images": [[poly_to_json(img.coeff((b,))) for b in range(r)] for img in gm.alpha_images],
        "bracket_gen": poly_consts_to_json(consts),
        "anchor": poly_matrix_to_json(gm.anchor),
    }


def gerstenhaber_from_payload(p: dict, name: str = "") -> HomGerstenhaberModel:
    r = _int(_req(p, "rank", "gerstenhaber_model"), "rank")
    n = _int(_req(p, "nvars", "gerstenhaber_model"), "nvars")
    alpha = poly_matrix_from_json(_req(p, "alpha_images", "gerstenhaber_model"), r, r, n, "alpha_images")
    images = [Multivector(r, n, {(b,): alpha[a][b] for b in range(r)}) for a in range(r)]
    consts = poly_consts_from_json(_req(p, "bracket_gen", "gerstenhaber_model"), r, n, "bracket_gen")
    gens: Dict[Tuple[int, int], dict] = {}
    for (a, b, c), v in consts.items():
        gens.setdefault((a, b), {})[(c,)] = v
    return HomGerstenhaberModel(
        r, n, images, {k: Multivector(r, n, v) for k, v in gens.items()},
        poly_matrix_from_json(_req(p, "anchor", "gerstenhaber_model"), r, n, n, "anchor"),
        substitution_from_json(_req(p, "phi", "gerstenhaber_model"), n), name=name,
    )


def hom_poisson_from_payload(p: dict, name: str = ""):
    """Rebuild a hom-Poisson model from the recipe stored in the file."""
    from .hom_algebras import sym_poisson_from_hom_lie
    from .poly_geometry import hom_poisson_by_composition
    construction = _req(p, "construction", "hom_poisson_algebra")
    if construction == "sym_poisson":
        return sym_poisson_from_hom_lie(hom_lie_from_payload(_req(p, "algebra", "hom_poisson_algebra"), name))
    if construction == "bivector_composition":
        pi, phi = bivector_from_payload(_req(p, "source", "hom_poisson_algebra"))
        product_ = _req(p, "product", "hom_poisson_algebra")
        if product_ not in ("composed", "plain"):
            _fail(f"product must be 'composed' or 'plain', got {product_!r}")
        return hom_poisson_by_composition(pi, phi, purely=product_ == "plain")
    _fail(f"unknown hom-Poisson construction {construction!r}")


# ---------------------------------------------------------------- files


def dumps(sf: StructureFile) -> str:
    if sf.kind not in KINDS:
        raise FormatError(f"unknown kind {sf.kind!r}")
    return json.dumps({"kind": sf.kind, "meta": sf.meta, "payload": sf.payload}, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> StructureFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    kind = _req(obj, "kind", "file")
    if kind not in KINDS:
        _fail(f"unknown kind {kind!r}")
    meta = obj.get("meta", "")
    if not isinstance(meta, str):
        _fail("meta must be a string")
    payload = _req(obj, "payload", "file")
    if not isinstance(payload, dict):
        _fail("payload must be an object")
    return StructureFile(kind, meta, payload)


def read(path: str) -> StructureFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise FormatError(f"{path} is not UTF-8 text") from None
    return loads(text)


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".homcat-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write(path: str, sf: StructureFile) -> None:
    write_atomic(path, dumps(sf))


def decode(sf: StructureFile):
    """Turn a structure file into library objects (kind-dependent tuple or object)."""
    p, name = sf.payload, sf.meta
    try:
        if sf.kind == "hom_lie_algebra":
            g = hom_lie_from_payload(p, name)
            return (g, action_from_payload(p, g.dim)) if "action" in p else g
        if sf.kind == "hom_associative_algebra":
            return hom_assoc_from_payload(p, name)
        if sf.kind == "representation":
            return representation_from_payload(p, name)
        if sf.kind == "bivector_and_map":
            return bivector_from_payload(p)
        if sf.kind == "vector_field_and_map":
            return vector_field_from_payload(p)
        if sf.kind == "hom_lie_algebroid":
            return algebroid_from_payload(p, name)
        if sf.kind == "gerstenhaber_model":
            return gerstenhaber_from_payload(p, name)
        if sf.kind == "hom_poisson_algebra":
            return hom_poisson_from_payload(p, name)
        if sf.kind in ("multivector", "form"):
            from .poly_geometry import Form, MultivectorField
            n = _int(_req(p, "nvars", sf.kind), "nvars")
            return multivector_from_json(_req(p, "terms", sf.kind), n, n, "terms",
                                         MultivectorField if sf.kind == "multivector" else Form)
    except FormatError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise FormatError(f"invalid {sf.kind} payload: {exc}") from None
    raise FormatError(f"unknown kind {sf.kind!r}")
