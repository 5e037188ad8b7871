"""Command-line front end: catalog browsing, local verification, triviality
classification, kind mappings, and numeric validation of global laws.

Exit codes: 0 success/definite verdict, 1 failed verification or violated
constraint, 2 parse or usage error, 3 inconclusive verdict or uncertified
refinement.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys as _sys
import warnings

from . import __version__
from .expr import Expr, VectorExpr, ExprError, format_expr
from . import sysdef, catalog, dsl
from .laws import (
    classify, verify_local, boundary_constant_of_motion,
    SPATIAL_DIV, SPATIAL_CURL, SPATIAL_GRAD, INCONCLUSIVE, NONTRIVIAL,
)
from .mappings import (
    MappingVector, map_current, constant_vector, ConstraintViolation,
    UnsupportedMapping, CURL_FREE, DIVERGENCE_FREE, CONSTANT,
)
from . import numgrid
from .numgrid import (
    Box, BoxBoundary, PlanarRect, RectBoundary, Circle, Segment,
    QuadratureSpec, balance_residual, topological_residual,
    refine_and_certify, ConvergenceWarning, DomainError,
)

SCHEMA = "conslaw-report/1"


def _emit(report, fmt, text_lines):
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, default=str))
    else:
        for line in text_lines:
            print(line)


def _value_str(v):
    if isinstance(v, VectorExpr):
        return "[%s]" % ", ".join(format_expr(c) for c in v)
    if isinstance(v, Expr):
        return format_expr(v)
    return str(v)


def _load_extra_catalog():
    path = os.environ.get("CONSLAW_CATALOG_DIR")
    loaded = []
    if not path or not os.path.isdir(path):
        return loaded
    for name in sorted(os.listdir(path)):
        if not name.endswith(".claw"):
            continue
        with open(os.path.join(path, name), "r", encoding="utf-8") as fh:
            doc = dsl.parse_document(fh.read(), name)
        for d in doc.diagnostics:
            if d.severity == "error":
                print("%s:%s" % (name, d), file=_sys.stderr)
        if doc.ok:
            for e in doc.entities:
                if isinstance(e, sysdef.PdeSystem):
                    sysdef.register_system(e)
                else:
                    try:
                        catalog.register_current(e)
                    except AttributeError:
                        pass
            loaded.append(name)
    return loaded


def _resolve_current(args):
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = dsl.parse_document(fh.read(), args.file)
        for d in doc.diagnostics:
            print(d, file=_sys.stderr)
        if not doc.ok:
            raise SystemExit(2)
        currents = [e for e in doc.entities
                    if e.__class__.__name__ == "ConservedCurrent"]
        if not currents:
            print("no current found in %s" % args.file, file=_sys.stderr)
            raise SystemExit(2)
        want = getattr(args, "current", None)
        if want:
            for c in currents:
                if c.id == want:
                    return c
            print("current %r not found in %s" % (want, args.file),
                  file=_sys.stderr)
            raise SystemExit(2)
        return currents[0]
    try:
        return catalog.current(args.system, args.current)
    except KeyError as exc:
        print(str(exc), file=_sys.stderr)
        raise SystemExit(2)


# ---------------------------------------------------------------------------
# commands

def cmd_list(args):
    kind = args.what
    rows = []
    if kind == "systems":
        for sid, s in sorted(sysdef.systems().items()):
            rows.append((sid, s.description))
    elif kind == "currents":
        for (sid, cid), c in sorted(catalog.currents().items()):
            rows.append(("%s/%s" % (sid, cid),
                         "%s; %s" % (c.kind, c.description)))
    elif kind == "solutions":
        for sid, s in sorted(sysdef.solutions().items()):
            rows.append(("%s (on %s)" % (sid, s.system_id), s.description))
    report = {"schema": SCHEMA, "command": "list", "what": kind,
              "entries": [{"id": r[0], "description": r[1]} for r in rows]}
    _emit(report, args.format,
          ["%-44s %s" % r for r in rows] or ["(none)"])
    return 0


def cmd_check(args):
    c = _resolve_current(args)
    try:
        r = verify_local(c)
    except ExprError as exc:
        print("error: %s" % exc, file=_sys.stderr)
        return 2
    zero = r.is_zero
    residual = _value_str(r)
    report = {"schema": SCHEMA, "command": "check",
              "system": c.system_id, "current": c.id, "kind": c.kind,
              "holds": bool(zero), "residual": residual}
    _emit(report, args.format, [
        "%s/%s (%s): %s" % (c.system_id, c.id, c.kind,
                            "PASS" if zero else "FAIL"),
        "" if zero else "residual: %s" % residual,
    ])
    return 0 if zero else 1


def _witness_dict(v):
    out = {}
    for key, val in v.witness.items():
        if val is not None:
            out[key] = _value_str(val)
    return out


def cmd_classify(args):
    c = _resolve_current(args)
    r = verify_local(c)
    if not r.is_zero:
        print("current does not verify; residual: %s" % _value_str(r),
              file=_sys.stderr)
        return 1
    v = classify(c, order_bound=args.order_bound)
    cert = None
    if v.certificate:
        cert = {"kind": v.certificate[0],
                "evidence": ", ".join(_value_str(x)
                                      for x in v.certificate[1:])}
    boundary = None
    if v.boundary_law is not None:
        b = v.boundary_law
        boundary = {"id": b.id, "kind": b.kind,
                    "density": _value_str(b.density),
                    "closed_domain": b.closed_domain}
    report = {"schema": SCHEMA, "command": "classify",
              "system": c.system_id, "current": c.id, "kind": c.kind,
              "status": v.status, "witness": _witness_dict(v),
              "certificate": cert, "boundary_law": boundary,
              "order_bound": v.order_bound, "diagnostics": v.diagnostics}
    lines = ["%s/%s: %s" % (c.system_id, c.id, v.status)]
    for key, val in _witness_dict(v).items():
        lines.append("  %s = %s" % (key, val))
    if cert:
        lines.append("  certificate: %s (%s)" % (cert["kind"],
                                                 cert["evidence"]))
    if boundary:
        lines.append("  boundary law: %s (%s, closed domains), density %s"
                     % (boundary["id"], boundary["kind"],
                        boundary["density"]))
    for d in v.diagnostics:
        lines.append("  note: %s" % d)
    _emit(report, args.format, lines)
    return 3 if v.status == INCONCLUSIVE else 0


def _parse_xi(spec):
    if spec in ("i", "j", "k"):
        return constant_vector("ijk".index(spec))
    parts = spec.split(";")
    if len(parts) == 4:
        constraint, comps = parts[0], parts[1:]
    elif len(parts) == 3:
        constraint, comps = None, parts
    else:
        raise SystemExit("xi must be i|j|k or [constraint;]c1;c2;c3")
    exprs = []
    for comp in comps:
        e, diags = dsl.parse_coordinate_expr(comp)
        if e is None:
            raise SystemExit("cannot parse xi component %r: %s"
                             % (comp, "; ".join(d.message for d in diags)))
        exprs.append(e)
    for name in ([constraint] if constraint else
                 [CURL_FREE, DIVERGENCE_FREE, CONSTANT]):
        try:
            return MappingVector(exprs, name, name="xi")
        except ConstraintViolation:
            continue
    raise SystemExit("xi satisfies no admissible constraint")


def cmd_map(args):
    c = _resolve_current(args)
    xi = _parse_xi(args.xi)
    try:
        img = map_current(c, xi, args.to)
    except (ConstraintViolation, UnsupportedMapping) as exc:
        print("error: %s" % exc, file=_sys.stderr)
        return 1
    r = verify_local(img)
    v = classify(img, order_bound=args.order_bound)
    text = dsl.print_entity(img)
    report = {"schema": SCHEMA, "command": "map",
              "system": c.system_id, "current": c.id, "target": args.to,
              "xi": args.xi, "image": text, "holds": r.is_zero,
              "status": v.status}
    _emit(report, args.format, [
        text, "",
        "verify: %s" % ("PASS" if r.is_zero else "FAIL"),
        "classification: %s" % v.status,
    ])
    if not r.is_zero:
        return 1
    return 3 if v.status == INCONCLUSIVE else 0


def _parse_floats(s, n, what):
    try:
        vals = [float(v) for v in s.split(",")]
    except ValueError:
        raise SystemExit("bad %s: %r" % (what, s))
    if len(vals) != n:
        raise SystemExit("%s needs %d comma-separated numbers" % (what, n))
    return vals


def parse_domain(spec):
    """Domain syntax: box:lo1,lo2,lo3,hi1,hi2,hi3 ;
    boxboundary:lo1,lo2,lo3,hi1,hi2,hi3 ;
    rect:plane=xy,offset=0,lo=a,b,hi=c,d ;
    circle:center=a,b,c,r=1,plane=xy ; segment:p0=a,b,c,p1=d,e,f"""
    head, _, rest = spec.partition(":")
    if head == "box" or head == "boxboundary":
        v = _parse_floats(rest, 6, "box")
        box = Box(v[:3], v[3:])
        return box.boundary() if head == "boxboundary" else box
    fields = {}
    if head in ("rect", "rectboundary", "circle", "segment"):
        key = None
        for chunk in rest.split(","):
            if "=" in chunk:
                key, val = chunk.split("=", 1)
                fields[key] = [val]
            elif key is not None:
                fields[key].append(chunk)
            else:
                raise SystemExit("bad domain field %r" % chunk)
    if head in ("rect", "rectboundary"):
        rect = PlanarRect(fields.get("plane", ["xy"])[0],
                          float(fields.get("offset", ["0"])[0]),
                          [float(x) for x in fields["lo"]],
                          [float(x) for x in fields["hi"]],
                          int(fields.get("orientation", ["1"])[0]))
        return rect.boundary() if head == "rectboundary" else rect
    if head == "circle":
        return Circle([float(x) for x in fields["center"]],
                      float(fields["r"][0]),
                      fields.get("plane", ["xy"])[0],
                      int(fields.get("orientation", ["1"])[0]))
    if head == "segment":
        return Segment([float(x) for x in fields["p0"]],
                       [float(x) for x in fields["p1"]])
    raise SystemExit("unknown domain %r" % spec)


def cmd_numcheck(args):
    c = _resolve_current(args)
    try:
        sol = sysdef.solution(args.solution)
    except KeyError as exc:
        print(str(exc), file=_sys.stderr)
        return 2
    dom = parse_domain(args.domain)
    quad = QuadratureSpec(points_per_axis=args.quad,
                          refinement_levels=args.levels)
    spatial = c.kind in (SPATIAL_DIV, SPATIAL_CURL, SPATIAL_GRAD)
    runner = topological_residual if spatial else balance_residual
    with warnings.catch_warnings():
        warnings.simplefilter("error", ConvergenceWarning)
        try:
            rep = refine_and_certify(
                lambda q: runner(c, dom, sol, args.time, q), quad)
            warned = False
        except ConvergenceWarning:
            warnings.simplefilter("ignore", ConvergenceWarning)
            rep = refine_and_certify(
                lambda q: runner(c, dom, sol, args.time, q), quad)
            warned = True
    if spatial:
        passed = abs(rep.value_C) <= args.atol
        measure = abs(rep.value_C)
    else:
        passed = (rep.relative_residual <= args.rtol
                  or abs(rep.residual) <= args.atol)
        measure = rep.relative_residual
    report = {"schema": SCHEMA, "command": "numcheck",
              "system": c.system_id, "current": c.id, "kind": c.kind,
              "solution": sol.id, "domain": repr(dom), "time": args.time,
              "passed": bool(passed) and not warned}
    report.update({k: (v if not isinstance(v, list) else
                       [[float(a) for a in row] for row in v])
                   for k, v in rep.as_dict().items()})
    lines = [
        "%s/%s on %s at t=%g: %s" % (c.system_id, c.id, sol.id, args.time,
                                     "PASS" if passed and not warned
                                     else "FAIL"),
        "  C  = %.12g" % rep.value_C,
        "  F  = %.12g" % rep.value_F,
        "  dC/dt = %.12g (finite difference %.12g)"
        % (rep.dCdt, rep.dCdt_fd if rep.dCdt_fd is not None else float("nan")),
        "  residual = %.3e (relative %.3e)" % (rep.residual,
                                               rep.relative_residual),
        "  refinement: " + "; ".join("n=%d -> %.3e" % (n, r)
                                     for n, r, _ in rep.refinement_table),
    ]
    _emit(report, args.format, lines)
    if warned:
        return 3
    return 0 if passed else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="conslaw",
        description="symbolic and numerical conservation-law toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("list", help="list registry entries")
    p.add_argument("what", choices=["systems", "currents", "solutions"])
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=cmd_list)

    p = sub.add_parser("check", help="verify a local conservation law")
    p.add_argument("--system")
    p.add_argument("--current")
    p.add_argument("--file", help=".claw file defining the current")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("classify", help="triviality classification")
    p.add_argument("--system")
    p.add_argument("--current")
    p.add_argument("--file")
    p.add_argument("--order-bound", type=int, default=None,
                   dest="order_bound")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("map", help="map a law to another kind via xi")
    p.add_argument("--system")
    p.add_argument("--current")
    p.add_argument("--file")
    p.add_argument("--to", required=True,
                   choices=["volumetric", "surface-flux", "spatial-div",
                            "spatial-curl"])
    p.add_argument("--xi", required=True,
                   help="i|j|k or constraint;c1;c2;c3")
    p.add_argument("--order-bound", type=int, default=None,
                   dest="order_bound")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=cmd_map)

    p = sub.add_parser("numcheck", help="numeric validation on a solution")
    p.add_argument("--system")
    p.add_argument("--current")
    p.add_argument("--file")
    p.add_argument("--solution", required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--time", type=float, default=0.0)
    p.add_argument("--quad", type=int, default=8,
                   help="points per axis at the first level")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--rtol", type=float, default=numgrid.REL_TOL)
    p.add_argument("--atol", type=float, default=1e-10)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=cmd_numcheck)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    _load_extra_catalog()
    try:
        code = args.fn(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=_sys.stderr)
            return 2
        raise
    return code


if __name__ == "__main__":
    raise SystemExit(main())
