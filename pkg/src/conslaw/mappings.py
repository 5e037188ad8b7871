"""Transformations between conservation-law kinds parameterized by a
time-independent coordinate vector field xi(x), with the potential forms of
xi and triviality-preservation reporting.

A circulatory law maps to a volumetric one by dotting with a
divergence-free xi, a surface-flux law maps to a volumetric one by dotting
with a curl-free xi, and a circulatory law maps to a surface-flux one by
crossing with a curl-free xi; the spatial (time-independent) kinds map
analogously.  Crossing a surface-flux law with xi yields no conservation
law of any kind and is rejected.
"""
from __future__ import annotations

from .expr import (
    Expr, VectorExpr, ZERO, ExprError, as_expr, unit_vector, format_expr,
)
from .jetcalc import tdiv, tcurl, tgrad, homotopy_witness, WitnessUnavailable
from .sysdef import system
from .laws import (
    ConservedCurrent, TrivialityVerdict, classify, verify_local,
    VOLUMETRIC, SURFACE_FLUX, CIRCULATORY,
    SPATIAL_DIV, SPATIAL_CURL, SPATIAL_GRAD,
    NONTRIVIAL, INCONCLUSIVE,
)


class ConstraintViolation(ExprError):
    pass


class UnsupportedMapping(ExprError):
    pass


DIVERGENCE_FREE = "divergence-free"
CURL_FREE = "curl-free"
CONSTANT = "constant"


class MappingVector:
    """A coordinate vector field xi(x) with a verified constraint."""

    def __init__(self, components, constraint, name=None):
        comps = [as_expr(c) for c in components]
        for c in comps:
            if c.jet_atom_ids():
                raise ConstraintViolation(
                    "mapping vectors must not involve jet variables")
        self.components = VectorExpr(*comps)
        self.constraint = constraint
        self.name = name or "xi"
        if constraint == DIVERGENCE_FREE:
            ok = tdiv(self.components).is_zero
        elif constraint == CURL_FREE:
            ok = tcurl(self.components).is_zero
        elif constraint == CONSTANT:
            ok = all(tgrad(comp).is_zero for comp in comps)
        else:
            raise ConstraintViolation("unknown constraint %r" % constraint)
        if not ok:
            raise ConstraintViolation(
                "declared constraint %r fails symbolically" % constraint)

    def satisfies(self, constraint):
        if self.constraint == CONSTANT:
            return True
        return self.constraint == constraint

    def zeta_potential(self):
        """Classical potential of xi: a scalar zeta with grad zeta = xi for
        a curl-free field, or a vector zeta with curl zeta = xi for a
        divergence-free one (star-shaped domain, centered at the origin)."""
        if self.satisfies(CURL_FREE):
            return homotopy_witness(self.components, "grad")
        return homotopy_witness(self.components, "curl")

    def __repr__(self):
        return "<MappingVector %s (%s)>" % (self.name, self.constraint)


def constant_vector(i):
    return MappingVector(list(unit_vector(i)), CONSTANT, name="ijk"[i])


CONSTANT_FRAME = tuple(constant_vector(i) for i in range(3))

_MAPS = {
    (CIRCULATORY, VOLUMETRIC): DIVERGENCE_FREE,
    (SURFACE_FLUX, VOLUMETRIC): CURL_FREE,
    (CIRCULATORY, SURFACE_FLUX): CURL_FREE,
    (SPATIAL_GRAD, SPATIAL_DIV): DIVERGENCE_FREE,
    (SPATIAL_CURL, SPATIAL_DIV): CURL_FREE,
    (SPATIAL_GRAD, SPATIAL_CURL): CURL_FREE,
}


def map_current(c, xi, target_kind):
    """Image of a conserved current under the xi mapping to target_kind."""
    key = (c.kind, target_kind)
    if key not in _MAPS:
        raise UnsupportedMapping(
            "no mapping from %s to %s; crossing a surface-flux law with xi "
            "yields no conservation law" % (c.kind, target_kind))
    need = _MAPS[key]
    if not xi.satisfies(need):
        raise ConstraintViolation(
            "mapping %s -> %s requires a %s xi" % (c.kind, target_kind, need))
    v = xi.components
    cid = "%s-to-%s-%s" % (c.id, target_kind, xi.name)
    if key == (CIRCULATORY, VOLUMETRIC):
        return ConservedCurrent(cid, VOLUMETRIC, c.system_id,
                                density=c.density.dot(v), flux=c.flux * v)
    if key == (SURFACE_FLUX, VOLUMETRIC):
        return ConservedCurrent(cid, VOLUMETRIC, c.system_id,
                                density=c.density.dot(v),
                                flux=c.flux.cross(v))
    if key == (CIRCULATORY, SURFACE_FLUX):
        return ConservedCurrent(cid, SURFACE_FLUX, c.system_id,
                                density=c.density.cross(v), flux=c.flux * v)
    if key == (SPATIAL_GRAD, SPATIAL_DIV):
        return ConservedCurrent(cid, SPATIAL_DIV, c.system_id,
                                flux=c.flux * v)
    if key == (SPATIAL_CURL, SPATIAL_DIV):
        return ConservedCurrent(cid, SPATIAL_DIV, c.system_id,
                                flux=c.flux.cross(v))
    return ConservedCurrent(cid, SPATIAL_CURL, c.system_id, flux=c.flux * v)


def default_targets(kind):
    return [t for (s, t) in _MAPS if s == kind]


class PreservationReport:
    def __init__(self, source_id, source_status, freeness, entries,
                 consistent, converse, notes):
        self.source_id = source_id
        self.source_status = source_status
        self.freeness = freeness            # "curl-free" / "div-free" / None on solutions
        self.entries = entries              # (xi name, target kind, status)
        self.consistent = consistent
        self.converse = converse            # "found" / "inconclusive" / None
        self.notes = notes


def check_triviality_preservation(c, sys=None, xi_family=(), order_bound=None):
    """Classify the images of c for the constant frame plus a user family
    and compare the outcome with the preservation theorem.

    A circulatory density whose curl vanishes on solutions (a surface-flux
    density whose divergence vanishes on solutions) must map to locally
    trivial images; a density failing the condition must admit at least one
    locally non-trivial image, which the detector searches for within the
    given family, reporting failure to find one as inconclusive.
    """
    sys = system(c.system_id) if sys is None else sys
    notes = []
    if c.kind == CIRCULATORY:
        free_onsol = sys.reduce(tcurl(c.density)).is_zero
        free_ident = tcurl(c.density).is_zero
        freeness = "curl-free" if free_onsol else None
        targets = [VOLUMETRIC, SURFACE_FLUX]
    elif c.kind == SURFACE_FLUX:
        free_onsol = sys.reduce(tdiv(c.density)).is_zero
        free_ident = tdiv(c.density).is_zero
        freeness = "divergence-free" if free_onsol else None
        targets = [VOLUMETRIC]
    else:
        raise UnsupportedMapping(
            "preservation analysis applies to circulatory and surface-flux "
            "laws")
    source_v = classify(c, sys, order_bound)
    entries = []
    family = list(CONSTANT_FRAME) + list(xi_family)
    found_nontrivial = False
    all_trivial = True
    for xi in family:
        for target in targets:
            need = _MAPS[(c.kind, target)]
            if not xi.satisfies(need):
                continue
            img = map_current(c, xi, target)
            if not verify_local(img, sys).is_zero:
                notes.append("image %s fails local verification" % img.id)
                all_trivial = False
                continue
            v = classify(img, sys, order_bound)
            entries.append((xi.name, target, v.status))
            if v.status == NONTRIVIAL:
                found_nontrivial = True
            if not v.is_trivial:
                all_trivial = False
    if free_onsol:
        consistent = all_trivial
        if not consistent:
            notes.append("density is exact on solutions yet an image did "
                         "not classify trivial")
    else:
        consistent = True
    converse = None
    if not free_ident:
        converse = "found" if found_nontrivial else "inconclusive"
        if not found_nontrivial:
            notes.append("no locally non-trivial image found in the sampled "
                         "family; reported as inconclusive rather than a "
                         "contradiction")
            if free_onsol:
                notes.append("the density is exact on solutions, so the "
                             "preservation theorem makes every image "
                             "locally trivial; a non-trivial image cannot "
                             "exist even though the density is not exact "
                             "off solutions")
    return PreservationReport(c.id, source_v.status, freeness, entries,
                              consistent, converse, notes)
