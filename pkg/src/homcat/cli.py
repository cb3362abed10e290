"""Command-line front end.

    homcat check INPUT [--suite NAME] [--report PATH] ...
    homcat construct --kind KIND INPUT OUTPUT
    homcat roundtrip INPUT
    homcat list

INPUT is a path or the name of a bundled fixture (``sl2``, ``fix_pi2``, ...).
Exit codes: 0 pass, 1 axiom failure, 2 malformed input or bad usage.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable, Dict, List, Optional

from . import __version__
from . import serialize as ser
from .errors import AxiomError, DimensionError, FormatError
from .hom_algebras import (HomLieAlgebra, check_adjoint_identity, check_dual_formula, check_hom_associativity,
                           check_hom_jacobi, check_hom_poisson, check_purely_hom_poisson, check_representation,
                           commutator_bracket, composition_hom_associative, composition_hom_lie, is_lie_on_image,
                           sym_poisson_from_hom_lie)
from .hom_algebroids import (action_algebroid, algebroid_to_gerstenhaber, check_action, check_algebroid,
                             check_gerstenhaber_side, check_preserves_vector_field, cotangent_algebroid,
                             gerstenhaber_to_algebroid, line_bundle_algebroid)
from .hom_gerstenhaber import (check_extracted_representation, check_graded_hom_jacobi, check_hom_leibniz,
                               exterior_gerstenhaber, mixed_gerstenhaber, sample_elements)
from .poly_geometry import check_hom_poisson_manifold, hom_poisson_by_composition
from .report import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BUNDLED_DIR = os.path.join(os.path.dirname(__file__), "data")


class UsageError(Exception):
    pass


def fixture_dir() -> str:
    return os.environ.get("HOMCAT_FIXTURES") or BUNDLED_DIR


def resolve(name: str) -> str:
    """A path if it exists, otherwise a bundled fixture name."""
    if os.path.exists(name):
        return name
    if os.sep not in name:
        candidate = os.path.join(fixture_dir(), name if name.endswith(".json") else name + ".json")
        if os.path.exists(candidate):
            return candidate
    return name


# ---------------------------------------------------------------- suites


def _graded(gm, opts) -> CheckReport:
    report = check_graded_hom_jacobi(gm, opts.max_degree, opts.coeff_degree)
    report.merge(check_hom_leibniz(gm, opts.max_degree, opts.coeff_degree))
    return report


def _hom_lie(obj) -> HomLieAlgebra:
    return obj[0] if isinstance(obj, tuple) else obj


def _suite_action(obj, opts) -> CheckReport:
    if not isinstance(obj, tuple):
        raise UsageError("the input has no 'action' section")
    g, (phi, delta) = obj
    report = check_hom_jacobi(g)
    report.merge(check_action(g, phi, delta, opts.degree_bound))
    return report


def _suite_adjoint(obj, opts) -> CheckReport:
    g = _hom_lie(obj)
    report = CheckReport(name="adjoint identities")
    for s in range(3):
        report.merge(check_adjoint_identity(g, s))
    return report


def _suite_bivector_poisson(purely: bool):
    def run(obj, opts):
        pi, phi = obj
        m = hom_poisson_by_composition(pi, phi, purely=purely, validate=False)
        check = check_purely_hom_poisson if purely else check_hom_poisson
        return check(m, opts.degree_bound)
    return run


def _suite_sym_poisson(obj, opts) -> CheckReport:
    g = _hom_lie(obj)
    report = check_hom_poisson(sym_poisson_from_hom_lie(g), opts.degree_bound)
    report.merge(check_dual_formula(g, opts.degree_bound))
    return report


Suite = Callable[[object, argparse.Namespace], CheckReport]

SUITES: Dict[str, Dict[str, Suite]] = {
    "hom_lie_algebra": {
        "hom_lie": lambda o, a: check_hom_jacobi(_hom_lie(o)),
        "lie_on_image": lambda o, a: is_lie_on_image(_hom_lie(o).bracket, _hom_lie(o).alpha),
        "exterior": lambda o, a: _graded(exterior_gerstenhaber(_hom_lie(o)), a),
        "adjoint": _suite_adjoint,
        "sym_poisson": _suite_sym_poisson,
        "action": _suite_action,
    },
    "hom_associative_algebra": {
        "hom_associative": lambda o, a: check_hom_associativity(o),
        "commutator": lambda o, a: check_hom_associativity(o).merge(check_hom_jacobi(commutator_bracket(o))),
    },
    "representation": {
        "representation": lambda o, a: check_representation(*o),
        "gerstenhaber": lambda o, a: _graded(mixed_gerstenhaber(*o), a),
    },
    "bivector_and_map": {
        "hom_poisson_manifold": lambda o, a: check_hom_poisson_manifold(*o),
        "hom_poisson": _suite_bivector_poisson(False),
        "purely_hom_poisson": _suite_bivector_poisson(True),
    },
    "hom_poisson_algebra": {
        "hom_poisson": lambda o, a: check_hom_poisson(o, a.degree_bound),
        "purely_hom_poisson": lambda o, a: check_purely_hom_poisson(o.with_product("plain"), a.degree_bound),
    },
    "vector_field_and_map": {
        "preserves": lambda o, a: check_preserves_vector_field(*o),
    },
    "hom_lie_algebroid": {
        "hom_lie_algebroid": lambda o, a: check_algebroid(o, a.degree_bound),
        "gerstenhaber": lambda o, a: check_gerstenhaber_side(o, a.max_degree, a.coeff_degree),
    },
    "gerstenhaber_model": {
        "gerstenhaber": _graded,
        "extracted": lambda o, a: check_extracted_representation(o, a.degree_bound),
    },
}

DEFAULT_SUITE = {kind: next(iter(suites)) for kind, suites in SUITES.items()}


# ---------------------------------------------------------------- commands


def _load(path: str):
    sf = ser.read(resolve(path))
    return sf, ser.decode(sf)


def _emit(report: CheckReport, stream=None) -> None:
    print(report.summary(), file=stream or sys.stdout)


def cmd_check(opts) -> int:
    sf, obj = _load(opts.input)
    suites = SUITES.get(sf.kind)
    if not suites:
        raise UsageError(f"no checks are defined for kind {sf.kind!r}")
    suite = opts.suite or DEFAULT_SUITE[sf.kind]
    if suite not in suites:
        raise UsageError(f"unknown suite {suite!r} for kind {sf.kind!r}; choose from {', '.join(suites)}")
    start = time.perf_counter()
    report = suites[suite](obj, opts)
    elapsed = time.perf_counter() - start
    if not report.name:
        report.name = suite
    _emit(report)
    if opts.report:
        out = {"input": opts.input, "kind": sf.kind, "meta": sf.meta, "suite": suite,
               "options": {"degree_bound": opts.degree_bound, "max_degree": opts.max_degree,
                           "coeff_degree": opts.coeff_degree, "seed": opts.seed}}
        out.update(report.to_dict())
        out["timing"] = {"seconds": round(elapsed, 6)}
        ser.write_atomic(opts.report, json.dumps(out, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _construct(kind: str, sf: ser.StructureFile, obj, opts) -> ser.StructureFile:
    SF = ser.StructureFile
    need = {
        "composition": ("hom_lie_algebra", "hom_associative_algebra"),
        "exterior": ("hom_lie_algebra", "representation"),
        "sym_poisson": ("hom_lie_algebra",),
        "action": ("hom_lie_algebra",),
        "line_bundle": ("vector_field_and_map",),
        "cotangent": ("bivector_and_map",),
        "to_gerstenhaber": ("hom_lie_algebroid",),
        "to_algebroid": ("gerstenhaber_model",),
    }[kind]
    if sf.kind not in need:
        raise UsageError(f"construction {kind!r} needs an input of kind {' or '.join(need)}, got {sf.kind!r}")
    meta = f"{kind} of {sf.meta}".strip() if sf.meta else kind
    if kind == "composition":
        if sf.kind == "hom_associative_algebra":
            a = composition_hom_associative(obj.product, obj.alpha, meta)
            return SF("hom_associative_algebra", meta, ser.hom_assoc_payload(a))
        g = _hom_lie(obj)
        return SF("hom_lie_algebra", meta, ser.hom_lie_payload(composition_hom_lie(g.bracket, g.alpha, meta)))
    if kind == "exterior":
        gm = mixed_gerstenhaber(*obj) if sf.kind == "representation" else exterior_gerstenhaber(_hom_lie(obj))
        return SF("gerstenhaber_model", meta, ser.gerstenhaber_payload(gm))
    if kind == "sym_poisson":
        g = _hom_lie(obj)
        sym_poisson_from_hom_lie(g)
        return SF("hom_poisson_algebra", meta, {"construction": "sym_poisson", "algebra": ser.hom_lie_payload(g)})
    if kind == "action":
        if not isinstance(obj, tuple):
            raise UsageError("the input has no 'action' section")
        g, (phi, delta) = obj
        m = action_algebroid(g, phi, delta, opts.degree_bound)
        return SF("hom_lie_algebroid", meta, ser.algebroid_payload(m))
    if kind == "line_bundle":
        m = line_bundle_algebroid(*obj, degree_bound=opts.degree_bound)
        return SF("hom_lie_algebroid", meta, ser.algebroid_payload(m))
    if kind == "cotangent":
        m = cotangent_algebroid(*obj, degree_bound=opts.degree_bound)
        return SF("hom_lie_algebroid", meta, ser.algebroid_payload(m))
    if kind == "to_gerstenhaber":
        gm = algebroid_to_gerstenhaber(obj, degree_bound=opts.degree_bound)
        return SF("gerstenhaber_model", sf.meta, ser.gerstenhaber_payload(gm))
    m = gerstenhaber_to_algebroid(obj, max_degree=opts.max_degree, coeff_degree=opts.coeff_degree)
    return SF("hom_lie_algebroid", sf.meta, ser.algebroid_payload(m))


def cmd_construct(opts) -> int:
    sf, obj = _load(opts.input)
    out = _construct(opts.kind, sf, obj, opts)
    ser.write(opts.output, out)
    print(f"wrote {out.kind} to {opts.output}")
    return EXIT_OK


def cmd_roundtrip(opts) -> int:
    sf, m = _load(opts.input)
    if sf.kind != "hom_lie_algebroid":
        raise UsageError(f"roundtrip needs a hom_lie_algebroid file, got {sf.kind!r}")
    report = check_algebroid(m, opts.degree_bound)
    if not report.passed:
        _emit(report)
        print("the input is not a hom-Lie algebroid; round trip not attempted")
        return EXIT_FAIL
    side = check_gerstenhaber_side(m, opts.max_degree, opts.coeff_degree)
    if not side.passed:
        _emit(side)
        print("the induced bracket on sections of ∧A is not hom-Gerstenhaber")
        return EXIT_FAIL
    gm = algebroid_to_gerstenhaber(m, validate=False)
    back = gerstenhaber_to_algebroid(gm, validate=False)
    diff = m.first_difference(back)
    if diff is not None:
        print(f"round trip mismatch: {diff}")
        return EXIT_FAIL
    # the rebuilt bracket must agree with the original on all sampled pairs
    rebuilt = back.engine()
    samples = sample_elements(gm, opts.max_degree, opts.coeff_degree)
    for X in samples:
        for Y in samples:
            if X.degree() + Y.degree() > opts.max_degree + 1:
                continue
            if gm.bracket(X, Y) != rebuilt.bracket(X, Y):
                print(f"round trip mismatch: bracket of {X} and {Y}")
                return EXIT_FAIL
    print(f"round trip ok: {sf.meta or opts.input} (n={m.nvars}, r={m.rank})")
    return EXIT_OK


def cmd_list(opts) -> int:
    directory = fixture_dir()
    try:
        names = sorted(f for f in os.listdir(directory) if f.endswith(".json"))
    except OSError as exc:
        raise FormatError(f"cannot list {directory}: {exc.strerror}") from None
    for f in names:
        sf = ser.read(os.path.join(directory, f))
        print(f"{f[:-5]:<32} {sf.kind:<24} {sf.meta}")
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homcat", description="Exact checks for hom-algebraic structures.")
    p.add_argument("--version", action="version", version=f"homcat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def knobs(sp):
        sp.add_argument("--degree-bound", type=int, default=3, help="polynomial degree bound (default 3)")
        sp.add_argument("--max-degree", type=int, default=3, help="exterior degree bound for graded checks")
        sp.add_argument("--coeff-degree", type=int, default=1,
                        help="coefficient degree of sampled sections in graded checks (default 1)")
        sp.add_argument("--seed", type=int, default=0, help="recorded in the report for reproducibility")

    c = sub.add_parser("check", help="run an axiom suite on a structure file")
    c.add_argument("input")
    c.add_argument("--suite")
    c.add_argument("--report", help="write a JSON report here")
    knobs(c)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="build a new structure from an input file")
    k.add_argument("--kind", required=True, choices=["composition", "exterior", "sym_poisson", "action",
                                                     "line_bundle", "cotangent", "to_gerstenhaber",
                                                     "to_algebroid"])
    k.add_argument("input")
    k.add_argument("output")
    knobs(k)
    k.set_defaults(func=cmd_construct)

    r = sub.add_parser("roundtrip", help="algebroid -> Gerstenhaber -> algebroid")
    r.add_argument("input")
    knobs(r)
    r.set_defaults(func=cmd_roundtrip)

    ls = sub.add_parser("list", help="list bundled fixtures")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    for knob in ("degree_bound", "max_degree", "coeff_degree"):
        if getattr(opts, knob, 0) < 0:
            print(f"error: --{knob.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return opts.func(opts)
    except AxiomError as exc:
        print(f"axiom failure: {exc}", file=sys.stderr)
        if exc.report is not None:
            _emit(exc.report, sys.stderr)
        return EXIT_FAIL
    except (FormatError, DimensionError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
