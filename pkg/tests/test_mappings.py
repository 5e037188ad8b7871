"""Kind-mapping transformations and triviality preservation."""
import random

import pytest

from conslaw import catalog
from conslaw.expr import Expr, VectorExpr, ZERO, coord, jet
from conslaw.jetcalc import tgrad, tdiv, tcurl
from conslaw.laws import (
    verify_local, classify, ConservedCurrent,
    VOLUMETRIC, SURFACE_FLUX, CIRCULATORY, SPATIAL_DIV, SPATIAL_CURL,
    SPATIAL_GRAD, NONTRIVIAL,
)
from conslaw.mappings import (
    MappingVector, map_current, check_triviality_preservation,
    constant_vector, CONSTANT_FRAME, ConstraintViolation,
    UnsupportedMapping, DIVERGENCE_FREE, CURL_FREE, CONSTANT,
)

x1, x2, x3 = coord("x1"), coord("x2"), coord("x3")

MAPPABLE = [
    ("irrotational-fluid", "circulation", SURFACE_FLUX),
    ("irrotational-fluid", "circulation", VOLUMETRIC),
    ("fluid-incompressible", "density-gradient", VOLUMETRIC),
    ("euler-adiabatic", "entropy-gradient", VOLUMETRIC),
    ("em", "faraday", VOLUMETRIC),
    ("em-vacuum", "displacement", VOLUMETRIC),
    ("euler-barotropic", "vorticity-transport", VOLUMETRIC),
    ("euler-equilibrium", "bernoulli", SPATIAL_DIV),
    ("irrotational-fluid", "curl-u", SPATIAL_DIV),
    ("magnetostatics", "magnetic-circulation", SPATIAL_DIV),
]


def test_constraint_verified_at_construction():
    MappingVector([-x2, x1, ZERO], DIVERGENCE_FREE)
    MappingVector([2 * x1, 2 * x2, 2 * x3], CURL_FREE)
    with pytest.raises(ConstraintViolation):
        MappingVector([x1, ZERO, ZERO], DIVERGENCE_FREE)
    with pytest.raises(ConstraintViolation):
        MappingVector([-x2, x1, ZERO], CURL_FREE)
    with pytest.raises(ConstraintViolation):
        MappingVector([x1, ZERO, ZERO], CONSTANT)
    with pytest.raises(ConstraintViolation):
        MappingVector([jet("u1"), ZERO, ZERO], CONSTANT)


def test_constant_frame_images_pass_verify_local():
    for sid, cid, target in MAPPABLE:
        c = catalog.current(sid, cid)
        for xi in CONSTANT_FRAME:
            img = map_current(c, xi, target)
            assert verify_local(img).is_zero, (sid, cid, target, xi.name)


def test_random_admissible_polynomial_xi_images(rng):
    c = catalog.current("irrotational-fluid", "circulation")
    fara = catalog.current("em", "faraday")
    for _ in range(20):
        a, b, c3 = (rng.randint(-3, 3) for _ in range(3))
        # divergence-free: curl of a random coordinate polynomial
        pot = VectorExpr(a * x2 * x3, b * x1 * x3, c3 * x1 * x2)
        xi_div = MappingVector(list(tcurl(pot)), DIVERGENCE_FREE)
        img = map_current(c, xi_div, VOLUMETRIC)
        assert verify_local(img).is_zero
        # curl-free: gradient of a random coordinate polynomial
        zeta = a * x1 * x1 + b * x1 * x2 + c3 * x3
        xi_curl = MappingVector(list(tgrad(zeta)), CURL_FREE)
        img2 = map_current(fara, xi_curl, VOLUMETRIC)
        assert verify_local(img2).is_zero
        img3 = map_current(c, xi_curl, SURFACE_FLUX)
        assert verify_local(img3).is_zero


def test_mapping_linearity(rng):
    c1 = catalog.current("gasdyn", "mass")
    c2 = catalog.current("gasdyn", "momentum-x")
    xi = CONSTANT_FRAME[1]
    # circulatory inputs needed; use faraday components instead
    f1 = catalog.current("em", "faraday")
    f2 = catalog.current("em", "efield-flux")
    a = Expr.const(3)
    comb = ConservedCurrent("comb", SURFACE_FLUX, "em",
                            density=a * f1.density + f2.density,
                            flux=a * f1.flux + f2.flux)
    m_comb = map_current(comb, xi, VOLUMETRIC)
    m1 = map_current(f1, xi, VOLUMETRIC)
    m2 = map_current(f2, xi, VOLUMETRIC)
    assert (m_comb.density - (a * m1.density + m2.density)).is_zero
    assert (m_comb.flux - (a * m1.flux + m2.flux)).is_zero


def test_zero_current_maps_to_zero():
    z = ConservedCurrent("zero", CIRCULATORY, "gasdyn",
                         density=VectorExpr(ZERO, ZERO, ZERO), flux=ZERO)
    img = map_current(z, CONSTANT_FRAME[0], VOLUMETRIC)
    assert img.density.is_zero and img.flux.is_zero


def test_constraint_guards():
    c = catalog.current("em", "faraday")
    xi_rot = MappingVector([-x2, x1, ZERO], DIVERGENCE_FREE, name="rot")
    with pytest.raises(ConstraintViolation):
        map_current(c, xi_rot, VOLUMETRIC)  # needs curl-free
    with pytest.raises(UnsupportedMapping):
        map_current(c, CONSTANT_FRAME[0], SURFACE_FLUX)


def test_spatial_mappings():
    b = catalog.current("euler-equilibrium", "bernoulli")
    img = map_current(b, CONSTANT_FRAME[2], SPATIAL_DIV)
    assert verify_local(img).is_zero
    img2 = map_current(b, CONSTANT_FRAME[2], SPATIAL_CURL)
    assert verify_local(img2).is_zero
    cu = catalog.current("irrotational-fluid", "curl-u")
    img3 = map_current(cu, CONSTANT_FRAME[0], SPATIAL_DIV)
    assert verify_local(img3).is_zero


def test_zeta_potentials():
    xi = MappingVector([2 * x1, 2 * x2, ZERO], CURL_FREE)
    zeta = xi.zeta_potential()
    assert (tgrad(zeta) - xi.components).is_zero
    xi2 = MappingVector([-x2, x1, ZERO], DIVERGENCE_FREE)
    zv = xi2.zeta_potential()
    assert (tcurl(zv) - xi2.components).is_zero


def test_preservation_trivial_sources():
    for sid, cid in [("fluid-incompressible", "density-gradient"),
                     ("euler-adiabatic", "entropy-gradient")]:
        rep = check_triviality_preservation(catalog.current(sid, cid))
        assert rep.freeness == "curl-free"
        assert rep.consistent
        assert all(status.startswith("trivial") for _, _, status
                   in rep.entries)


def test_preservation_circulation_images_all_trivial():
    # the circulation density is curl-free on solutions, so the theorem
    # forces every image to be locally trivial; the detector triggered by
    # the off-solutions curl finds nothing and reports inconclusive
    rep = check_triviality_preservation(
        catalog.current("irrotational-fluid", "circulation"))
    assert rep.freeness == "curl-free"
    assert rep.consistent
    assert all(status.startswith("trivial") for _, _, status in rep.entries)
    assert rep.converse == "inconclusive"


def test_faraday_images_trivial_despite_offsolution_divergence():
    # div B vanishes on solutions (it is one of the equations), so every
    # image is locally trivial even though div B is nonzero off solutions
    rep = check_triviality_preservation(catalog.current("em", "faraday"))
    assert rep.freeness == "divergence-free"
    assert rep.consistent
    assert rep.converse == "inconclusive"
    assert all(status.startswith("trivial") for _, _, status in rep.entries)


def test_efield_flux_images_nontrivial():
    # div E = 4*pi*q is nonzero on solutions, so the converse detector
    # finds certified non-trivial volumetric images
    rep = check_triviality_preservation(catalog.current("em", "efield-flux"))
    assert rep.freeness is None
    assert rep.converse == "found"
    assert any(status == NONTRIVIAL for _, _, status in rep.entries)
