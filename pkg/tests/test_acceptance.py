"""Acceptance suite: every criterion at its stated tolerance, one printed
pass/fail line per criterion.

Criterion 5's converse clause is asserted as stated and is expected to
fail: the circulation density is curl-free on the solution space of the
irrotational system, so the preservation theorem makes every mapped image
locally trivial, and the classifier exhibits verified witnesses for all of
them.  A locally non-trivial image therefore cannot exist; the detector
reports the search honestly as inconclusive.  See the decisions ledger.
"""
import math
import random
import string

import pytest

from conslaw import catalog
from conslaw.expr import Expr, VectorExpr, ZERO, coord, jet, param
from conslaw.jetcalc import (
    total_dt, tgrad, tdiv, tcurl, euler, spatial_euler, vector_total_dt,
)
from conslaw.sysdef import system, solution, vec
from conslaw.laws import (
    classify, verify_local, boundary_constant_of_motion,
    VOLUMETRIC, SURFACE_FLUX, CIRCULATORY, SPATIAL_DIV, SPATIAL_CURL,
    TRIVIAL_IIB, NONTRIVIAL,
)
from conslaw.mappings import (
    map_current, check_triviality_preservation, CONSTANT_FRAME,
)
from conslaw.numgrid import (
    Box, Circle, QuadratureSpec, integrate, balance_residual,
    topological_residual, refine_and_certify, gauss_consistency,
    stokes_consistency, PlanarRect,
)
from conslaw.dsl import parse_document, print_document
from conftest import rand_expr, rand_vector


def _line(num, ok, text):
    print("criterion %d: %s - %s" % (num, "PASS" if ok else "FAIL", text))


def test_criterion_1_operator_identities():
    rng = random.Random(101)
    atoms = [jet("u"), jet("v"), jet("u", ("x1",)), jet("v", ("x2",)),
             jet("u", ("t",)), coord("x1"), coord("x2"), coord("x3"),
             coord("t")]
    failures = 0
    for _ in range(200):
        F = rand_vector(rng, atoms)
        f = rand_expr(rng, atoms, 2)
        if not tdiv(tcurl(F)).is_zero:
            failures += 1
        if not tcurl(tgrad(f)).is_zero:
            failures += 1
        e = total_dt(rand_expr(rng, atoms, 2)) + tdiv(rand_vector(rng, atoms))
        if not (euler(e, "u").is_zero and euler(e, "v").is_zero):
            failures += 1
        d = tdiv(rand_vector(rng, atoms))
        if not (spatial_euler(d, "u").is_zero
                and spatial_euler(d, "v").is_zero):
            failures += 1
    _line(1, failures == 0,
          "operator identity suite on 200 random expressions per family, "
          "%d failures" % failures)
    assert failures == 0


def test_criterion_2_catalog_verification():
    entries = sorted(catalog.currents().items())
    bad = []
    for (sid, cid), c in entries:
        if not verify_local(c).is_zero:
            bad.append((sid, cid))
    _line(2, len(entries) >= 20 and not bad,
          "verify_local zero for all %d registered currents" % len(entries))
    assert len(entries) >= 20
    assert not bad, bad


GOLDEN_NONTRIVIAL = [
    ("gasdyn", "mass"), ("gasdyn", "energy"), ("gasdyn", "momentum-x"),
    ("gasdyn", "momentum-y"), ("gasdyn", "momentum-z"),
    ("euler-constdens", "helicity"), ("mhd-ideal", "cross-helicity"),
    ("em", "div-B"), ("fluid-incompressible", "streamline-flux"),
    ("irrotational-fluid", "curl-u"), ("euler-equilibrium", "bernoulli"),
]
GOLDEN_TRIVIAL_IIB = [
    ("em", "charge-current"), ("euler-adiabatic", "ertel"),
    ("euler-barotropic", "vorticity-transport"),
    ("irrotational-adiabatic", "entropy-cross"),
    ("euler-barotropic", "div-vorticity"),
]


def test_criterion_3_classification_golden_table():
    bad = []
    for sid, cid in GOLDEN_NONTRIVIAL:
        v = classify(catalog.current(sid, cid))
        if v.status != NONTRIVIAL:
            bad.append((sid, cid, v.status))
    for sid, cid in GOLDEN_TRIVIAL_IIB:
        c = catalog.current(sid, cid)
        v = classify(c)
        if v.status != TRIVIAL_IIB:
            bad.append((sid, cid, v.status))
            continue
        sys = system(sid)
        th = v.witness.get("theta")
        lam = v.witness.get("lambda")
        if c.kind == VOLUMETRIC:
            ok = sys.reduce(c.density - tdiv(th)).is_zero and \
                sys.reduce(c.flux + vector_total_dt(th) - tcurl(lam)).is_zero
        elif c.kind == SURFACE_FLUX:
            ok = sys.reduce(c.density - tcurl(th)).is_zero and \
                sys.reduce(c.flux + vector_total_dt(th) - tgrad(lam)).is_zero
        else:
            ok = sys.reduce(c.flux - tcurl(th)).is_zero
        if not ok:
            bad.append((sid, cid, "witness residual nonzero"))
    # div-vorticity must carry the velocity witness up to gauge
    v = classify(catalog.current("euler-barotropic", "div-vorticity"))
    if v.witness.get("theta") != vec("u"):
        bad.append(("euler-barotropic", "div-vorticity", "theta != u"))
    _line(3, not bad, "golden classification table with exact witness "
          "re-substitution (%d entries)" %
          (len(GOLDEN_NONTRIVIAL) + len(GOLDEN_TRIVIAL_IIB)))
    assert not bad, bad


def test_criterion_4_boundary_laws():
    cases = [
        ("mhd", "div-B", SURFACE_FLUX, vec("B")),
        ("fluid-incompressible", "streamline-flux", SURFACE_FLUX, vec("u")),
        ("irrotational-fluid", "curl-u", CIRCULATORY, vec("u")),
    ]
    bad = []
    for sid, cid, bkind, dens in cases:
        law = boundary_constant_of_motion(catalog.current(sid, cid))
        if law is None or law.kind != bkind or not law.closed_domain:
            bad.append((sid, cid, "missing or wrong kind"))
            continue
        if law.density != dens:
            bad.append((sid, cid, "unexpected density"))
        if not verify_local(law).is_zero:
            bad.append((sid, cid, "temporal residual nonzero"))
    _line(4, not bad,
          "closed-surface magnetic flux, streamline flux, and closed-curve "
          "circulation constants of motion emitted and verified")
    assert not bad, bad


def test_criterion_5_mapping_suite():
    mapped = [
        ("irrotational-fluid", "circulation", SURFACE_FLUX),
        ("irrotational-fluid", "circulation", VOLUMETRIC),
        ("fluid-incompressible", "density-gradient", VOLUMETRIC),
        ("euler-adiabatic", "entropy-gradient", VOLUMETRIC),
        ("em", "faraday", VOLUMETRIC),
        ("em-vacuum", "displacement", VOLUMETRIC),
        ("euler-barotropic", "vorticity-transport", VOLUMETRIC),
    ]
    bad = []
    n_images = 0
    for sid, cid, target in mapped:
        c = catalog.current(sid, cid)
        for xi in CONSTANT_FRAME:
            img = map_current(c, xi, target)
            n_images += 1
            if not verify_local(img).is_zero:
                bad.append((sid, cid, target, xi.name))
    for sid, cid in [("fluid-incompressible", "density-gradient"),
                     ("euler-adiabatic", "entropy-gradient")]:
        rep = check_triviality_preservation(catalog.current(sid, cid))
        if not (rep.freeness == "curl-free" and rep.consistent
                and all(s.startswith("trivial") for _, _, s in rep.entries)):
            bad.append((sid, cid, "preservation"))
    _line(5, not bad,
          "constant-frame maps of %d catalog currents verify; triviality "
          "preservation confirmed on the gradient currents" % len(mapped))
    assert not bad, bad


@pytest.mark.xfail(
    strict=True,
    reason="unattainable as stated: curl u = 0 holds on solutions of the "
           "irrotational system, so the preservation theorem forces every "
           "image of the circulation current to be locally trivial and the "
           "classifier produces verified witnesses for all of them; the "
           "converse detector honestly reports inconclusive (see the "
           "decisions ledger)")
def test_criterion_5_converse_detector_circulation():
    rep = check_triviality_preservation(
        catalog.current("irrotational-fluid", "circulation"))
    found = rep.converse == "found"
    _line(5, found,
          "converse detector on the irrotational circulation current "
          "(reported: %s; every constant-frame image classified %s)"
          % (rep.converse, sorted({s for _, _, s in rep.entries})))
    assert found, ("no locally non-trivial image exists; detector "
                   "reported %r" % rep.converse)


def test_criterion_6_numeric_balance():
    box = Box((0, 0, 0), (1, 1, 1))
    sol = solution("em-planewave")
    energy = catalog.current("em-vacuum", "energy")
    bad = []
    for t in (0.0, 0.3, 0.7):
        rep = refine_and_certify(
            lambda q: balance_residual(energy, box, sol, t, q))
        if rep.relative_residual > 1e-6 or not rep.converged:
            bad.append(("energy", t, rep.relative_residual))
    flux = topological_residual(catalog.current("em-vacuum", "div-B"),
                                box.boundary(), sol, 0.3)
    if abs(flux.value_C) > 1e-10:
        bad.append(("magnetic flux", flux.value_C))
    pf = solution("potential-flow")
    circ = Circle((0, 0, 0), 1.0, "xy")
    crep = balance_residual(catalog.current("irrotational-fluid",
                                            "circulation"), circ, pf, 0.2)
    if abs(crep.value_C) > 1e-10 or abs(crep.dCdt) > 1e-10:
        bad.append(("circulation", crep.value_C, crep.dCdt))
    rot = solution("rigid-rotation")
    u = vec("u")
    val = integrate(u, circ, rot, 0.0)
    if abs(val - 2 * math.pi) > 1e-8 * 2 * math.pi:
        bad.append(("rigid rotation", val))
    _line(6, not bad,
          "plane-wave energy balance (relative <= 1e-6, monotone "
          "refinement), closed-surface magnetic flux and closed-circle "
          "circulation <= 1e-10, rigid-rotation control 2*pi within 1e-8")
    assert not bad, bad


def test_criterion_7_gauss_stokes_consistency():
    rng = random.Random(77)
    x1, x2, x3 = coord("x1"), coord("x2"), coord("x3")
    box = Box((0, -0.5, 0.25), (1.25, 0.5, 1.0))
    rect = PlanarRect("xy", 0.3, (0, -0.25), (1.0, 0.75))
    bad = []
    for i in range(10):
        F = VectorExpr(rand_expr(rng, [x1, x2, x3], 2),
                       rand_expr(rng, [x1, x2, x3], 2),
                       rand_expr(rng, [x1, x2, x3], 2))
        d, lhs, rhs = gauss_consistency(F, box)
        if d > 1e-8 * max(abs(lhs), abs(rhs), 1.0):
            bad.append(("gauss", i, d))
        d2, l2, r2 = stokes_consistency(F, rect)
        if d2 > 1e-8 * max(abs(l2), abs(r2), 1.0):
            bad.append(("stokes", i, d2))
    _line(7, not bad,
          "Gauss and Stokes quadrature consistency <= 1e-8 relative on 10 "
          "random polynomial fields each")
    assert not bad, bad


def test_criterion_8_parser_round_trip_and_fuzz():
    ents = [c for _, c in sorted(catalog.currents().items())]
    doc = parse_document(print_document(ents), "catalog")
    round_trip_ok = doc.ok and len(doc.entities) == len(ents)
    if round_trip_ok:
        by_key = {(c.system_id, c.id): c for c in doc.entities}
        for c in ents:
            p = by_key[(c.system_id, c.id)]
            if p.density != c.density or p.flux != c.flux:
                round_trip_ok = False
    rng = random.Random(4242)
    words = ("system current solution vectorfield on kind density flux "
             "{ } [ ] ( ) ; : , + - * / ^ = rho u dt di grad div curl dot "
             "cross 1 2 0.5 x1 t _").split()
    crashes = 0
    for _ in range(10000):
        mode = rng.random()
        if mode < 0.4:
            s = bytes(rng.randrange(256)
                      for _ in range(rng.randrange(60))).decode("latin1")
        elif mode < 0.8:
            s = " ".join(rng.choice(words) for _ in range(rng.randrange(40)))
        else:
            s = "".join(rng.choice(string.printable)
                        for _ in range(rng.randrange(80)))
        try:
            parse_document(s)
        except Exception:
            crashes += 1
    _line(8, round_trip_ok and crashes == 0,
          "full-catalog round trip and 10000-input fuzz with %d crashes"
          % crashes)
    assert round_trip_ok
    assert crashes == 0
