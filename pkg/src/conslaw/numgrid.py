"""Numerical validation of global conservation laws by quadrature.

Volumes are axis-aligned boxes, surfaces are box boundaries and planar
rectangles, curves are circles and segments.  Dynamical laws are checked as
balance residuals (rate of change of the conserved integral plus the net
boundary flux); topological laws as closed-domain integrals that must
vanish.  Gauss-Legendre rules are used except on circles, where the
composite trapezoid rule is spectrally accurate for periodic integrands.
"""
from __future__ import annotations

import math
import warnings

import numpy as np

from .expr import Expr, VectorExpr, ExprError, as_expr, coord, param
from .jetcalc import total_dt, vector_total_dt, tgrad, tdiv, tcurl
from .sysdef import solution as get_solution
from .laws import (
    VOLUMETRIC, SURFACE_FLUX, CIRCULATORY,
    SPATIAL_DIV, SPATIAL_CURL, SPATIAL_GRAD,
)


class DomainError(ExprError):
    pass


class ConvergenceWarning(UserWarning):
    pass


ABS_FLOOR = 1e-12
REL_TOL = 1e-6


# ---------------------------------------------------------------------------
# integration domains

class Box:
    def __init__(self, lo, hi):
        self.lo = tuple(float(v) for v in lo)
        self.hi = tuple(float(v) for v in hi)
        if any(h <= l for l, h in zip(self.lo, self.hi)):
            raise DomainError("box extents must be positive")

    def boundary(self):
        return BoxBoundary(self)

    def __repr__(self):
        return "Box(%s, %s)" % (self.lo, self.hi)


class BoxBoundary:
    def __init__(self, box):
        self.box = box

    def __repr__(self):
        return "BoxBoundary(%r)" % (self.box,)


_PLANES = {"xy": (0, 1, 2), "yz": (1, 2, 0), "xz": (0, 2, 1)}


class PlanarRect:
    """Axis-aligned rectangle in one of the coordinate planes."""

    def __init__(self, plane, offset, lo, hi, orientation=1):
        if plane not in _PLANES:
            raise DomainError("plane must be one of xy, yz, xz")
        self.plane = plane
        self.offset = float(offset)
        self.lo = (float(lo[0]), float(lo[1]))
        self.hi = (float(hi[0]), float(hi[1]))
        if any(h <= l for l, h in zip(self.lo, self.hi)):
            raise DomainError("rectangle extents must be positive")
        if orientation not in (1, -1):
            raise DomainError("orientation must be +1 or -1")
        self.orientation = orientation

    def boundary(self):
        return RectBoundary(self)

    def __repr__(self):
        return "PlanarRect(%s, %s, %s, %s, %d)" % (
            self.plane, self.offset, self.lo, self.hi, self.orientation)


class RectBoundary:
    """Boundary of a planar rectangle, oriented by the right-hand rule
    around the rectangle normal (tangent x normal points outward)."""

    def __init__(self, rect):
        self.rect = rect

    def __repr__(self):
        return "RectBoundary(%r)" % (self.rect,)


class Circle:
    def __init__(self, center, radius, plane="xy", orientation=1):
        if plane not in _PLANES:
            raise DomainError("plane must be one of xy, yz, xz")
        if radius <= 0:
            raise DomainError("radius must be positive")
        if orientation not in (1, -1):
            raise DomainError("orientation must be +1 or -1")
        self.center = tuple(float(v) for v in center)
        self.radius = float(radius)
        self.plane = plane
        self.orientation = orientation

    def reversed(self):
        return Circle(self.center, self.radius, self.plane,
                      -self.orientation)

    def __repr__(self):
        return "Circle(%s, r=%s, %s, %d)" % (self.center, self.radius,
                                             self.plane, self.orientation)


class Segment:
    def __init__(self, p0, p1):
        self.p0 = tuple(float(v) for v in p0)
        self.p1 = tuple(float(v) for v in p1)
        if self.p0 == self.p1:
            raise DomainError("degenerate segment")

    def reversed(self):
        return Segment(self.p1, self.p0)

    def __repr__(self):
        return "Segment(%s, %s)" % (self.p0, self.p1)


class QuadratureSpec:
    def __init__(self, points_per_axis=8, refinement_levels=3):
        if points_per_axis < 2:
            raise DomainError("points_per_axis must be at least 2")
        self.points_per_axis = int(points_per_axis)
        self.refinement_levels = int(refinement_levels)

    def refined(self, factor):
        return QuadratureSpec(self.points_per_axis * factor,
                              self.refinement_levels)


class IntegralReport:
    """Conserved quantity, net flux, and their balance residual."""

    def __init__(self, value_C, value_F, dCdt, dCdt_fd=None):
        self.value_C = value_C
        self.value_F = value_F
        self.dCdt = dCdt
        self.dCdt_fd = dCdt_fd
        self.residual = dCdt + value_F
        self.relative_residual = abs(self.residual) / max(
            abs(dCdt), abs(value_F), 1e-300)
        self.refinement_table = []
        self.converged = None

    def as_dict(self):
        return {
            "value_C": self.value_C,
            "value_F": self.value_F,
            "dCdt": self.dCdt,
            "dCdt_fd": self.dCdt_fd,
            "residual": self.residual,
            "relative_residual": self.relative_residual,
            "refinement_table": self.refinement_table,
            "converged": self.converged,
        }


# ---------------------------------------------------------------------------
# pointwise evaluation

_gauss_cache = {}


def _gauss(n):
    if n not in _gauss_cache:
        x, w = np.polynomial.legendre.leggauss(n)
        _gauss_cache[n] = (x, w)
    return _gauss_cache[n]


def _gauss_on(a, b, n):
    x, w = _gauss(n)
    mid, half = (a + b) / 2.0, (b - a) / 2.0
    return mid + half * x, half * w


def _compile_poly(p, params, fns):
    from .expr import (_atom_info, _KIND_COORD, _KIND_PARAM, _KIND_OPAQUE,
                       COORD_NAMES)
    terms = []
    for mono, coeff in p.items():
        factors = []
        for aid, exp in mono:
            kind, data, _ = _atom_info[aid]
            if kind == _KIND_COORD:
                factors.append((COORD_NAMES.index(data), exp))
            elif kind == _KIND_PARAM:
                if data not in params:
                    raise DomainError("parameter %r has no numeric value"
                                      % data)
                factors.append((float(params[data]) ** exp, None))
            elif kind == _KIND_OPAQUE:
                fn, args = data
                impl = fns.get(fn.name, fn.evaluator)
                if impl is None:
                    raise DomainError("no numeric binding for function %r"
                                      % fn.name)
                argfns = [_compile_expr(a, params, fns) for a in args]
                factors.append(((impl, argfns), exp))
            else:
                raise DomainError("expression still contains jet variables; "
                                  "a registered solution is required")
        terms.append((float(coeff), factors))

    def f(pt):
        total = 0.0
        for coeff, factors in terms:
            v = coeff
            for fac, exp in factors:
                if exp is None:
                    v *= fac
                elif isinstance(fac, int):
                    v *= pt[fac] ** exp
                else:
                    impl, argfns = fac
                    v *= impl(*[g(pt) for g in argfns]) ** exp
            total += v
        return total

    return f


def _compile_expr(e, params, fns):
    e = as_expr(e)
    fnum = _compile_poly(e.num, params, fns)
    if not e.den or list(e.den.items()) == [((), 1)]:
        return fnum
    fden = _compile_poly(e.den, params, fns)

    def f(pt):
        return fnum(pt) / fden(pt)

    return f


def pointwise(e, sol=None):
    """Compile an expression to a float function of (t, x1, x2, x3).

    With a solution, jet variables are replaced by derivatives of its
    fields and parameters take the solution's defaults; without one the
    expression must be closed in the coordinates already.
    """
    if sol is not None:
        e = sol.closed_form(e)
    e = as_expr(e)
    if e.jet_atom_ids():
        raise DomainError("expression still contains jet variables; "
                          "a registered solution is required")
    params = dict(sol.parameter_defaults) if sol is not None else {}
    fns = dict(sol.numeric_functions) if sol is not None else {}
    g = _compile_expr(e, params, fns)

    def f(t, x1, x2, x3):
        v = g((t, x1, x2, x3))
        if not math.isfinite(v):
            raise DomainError("non-finite value in quadrature")
        return v

    return f


def _vector_pointwise(v, sol=None):
    return [pointwise(comp, sol) for comp in v]


# ---------------------------------------------------------------------------
# core quadratures

def _integrate_box(f, box, t, n):
    xs1, w1 = _gauss_on(box.lo[0], box.hi[0], n)
    xs2, w2 = _gauss_on(box.lo[1], box.hi[1], n)
    xs3, w3 = _gauss_on(box.lo[2], box.hi[2], n)
    total = 0.0
    for a, wa in zip(xs1, w1):
        for b, wb in zip(xs2, w2):
            for c, wc in zip(xs3, w3):
                total += wa * wb * wc * f(t, a, b, c)
    return total


def _face_points(axis, value, lo, hi, n):
    axes = [0, 1, 2]
    axes.remove(axis)
    u, wu = _gauss_on(lo[axes[0]], hi[axes[0]], n)
    v, wv = _gauss_on(lo[axes[1]], hi[axes[1]], n)
    for a, wa in zip(u, wu):
        for b, wb in zip(v, wv):
            x = [0.0, 0.0, 0.0]
            x[axis] = value
            x[axes[0]] = a
            x[axes[1]] = b
            yield tuple(x), wa * wb


def _integrate_box_boundary(fv, bb, t, n):
    box = bb.box
    total = 0.0
    for axis in range(3):
        for value, sign in ((box.lo[axis], -1.0), (box.hi[axis], 1.0)):
            comp = fv[axis]
            for (x1, x2, x3), w in _face_points(axis, value, box.lo,
                                                box.hi, n):
                total += sign * w * comp(t, x1, x2, x3)
    return total


def _rect_frame(rect):
    i, j, k = _PLANES[rect.plane]
    return i, j, k


def _integrate_rect(fv, rect, t, n):
    i, j, k = _rect_frame(rect)
    u, wu = _gauss_on(rect.lo[0], rect.hi[0], n)
    v, wv = _gauss_on(rect.lo[1], rect.hi[1], n)
    comp = fv[k]
    total = 0.0
    for a, wa in zip(u, wu):
        for b, wb in zip(v, wv):
            x = [0.0, 0.0, 0.0]
            x[i] = a
            x[j] = b
            x[k] = rect.offset
            total += wa * wb * comp(t, *x)
    return rect.orientation * total


def _integrate_rect_boundary(fv, rb, t, n):
    rect = rb.rect
    i, j, k = _rect_frame(rect)
    lo, hi = rect.lo, rect.hi
    # counterclockwise around the +e_k normal
    edges = [
        (i, lo[0], hi[0], j, lo[1], +1),
        (j, lo[1], hi[1], i, hi[0], +1),
        (i, hi[0], lo[0], j, hi[1], -1),
        (j, hi[1], lo[1], i, lo[0], -1),
    ]
    total = 0.0
    for axis, a, b, other_axis, other_value, _ in edges:
        lo_, hi_ = (a, b) if a < b else (b, a)
        direction = 1.0 if b > a else -1.0
        s, ws = _gauss_on(lo_, hi_, n)
        comp = fv[axis]
        for pos, w in zip(s, ws):
            x = [0.0, 0.0, 0.0]
            x[axis] = pos
            x[other_axis] = other_value
            x[k] = rect.offset
            total += direction * w * comp(t, *x)
    return rect.orientation * total


def _circle_points(circle, n):
    i, j, k = _PLANES[circle.plane]
    thetas = np.arange(n) * (2.0 * math.pi / n)
    w = 2.0 * math.pi / n
    for th in thetas:
        x = list(circle.center)
        x[i] += circle.radius * math.cos(th)
        x[j] += circle.radius * math.sin(th)
        tangent = [0.0, 0.0, 0.0]
        tangent[i] = -math.sin(th)
        tangent[j] = math.cos(th)
        if circle.orientation < 0:
            tangent = [-c for c in tangent]
        yield tuple(x), tangent, w * circle.radius


def _integrate_circle(fv, circle, t, n):
    total = 0.0
    for x, tangent, w in _circle_points(circle, max(n, 4)):
        val = sum(tangent[a] * fv[a](t, *x) for a in range(3)
                  if tangent[a] != 0.0)
        total += w * val
    return total


def _integrate_segment(fv, seg, t, n):
    d = [b - a for a, b in zip(seg.p0, seg.p1)]
    length = math.sqrt(sum(c * c for c in d))
    tangent = [c / length for c in d]
    s, ws = _gauss_on(0.0, length, n)
    total = 0.0
    for pos, w in zip(s, ws):
        x = [p + tangent[a] * pos for a, p in enumerate(seg.p0)]
        val = sum(tangent[a] * fv[a](t, *x) for a in range(3)
                  if tangent[a] != 0.0)
        total += w * val
    return total


def integrate(e, dom, sol=None, t=0.0, quad=None):
    """Integral of e over the domain at time t.

    Scalars integrate over volumes; vectors are dotted with the outward
    normal on surfaces and with the unit tangent on curves.
    """
    quad = quad or QuadratureSpec()
    n = quad.points_per_axis
    if isinstance(dom, Box):
        return _integrate_box(pointwise(e, sol), dom, t, n)
    if isinstance(dom, BoxBoundary):
        return _integrate_box_boundary(_vector_pointwise(e, sol), dom, t, n)
    if isinstance(dom, PlanarRect):
        return _integrate_rect(_vector_pointwise(e, sol), dom, t, n)
    if isinstance(dom, RectBoundary):
        return _integrate_rect_boundary(_vector_pointwise(e, sol), dom, t, n)
    if isinstance(dom, Circle):
        return _integrate_circle(_vector_pointwise(e, sol), dom, t, n)
    if isinstance(dom, Segment):
        return _integrate_segment(_vector_pointwise(e, sol), dom, t, n)
    raise DomainError("unsupported domain %r" % (dom,))


# ---------------------------------------------------------------------------
# conservation-law residuals

def _endpoint_flow(e, sol, seg, t):
    f = pointwise(e, sol)
    return f(t, *seg.p1) - f(t, *seg.p0)


def _resolve_solution(sol):
    return get_solution(sol) if isinstance(sol, str) else sol


def balance_residual(c, dom, sol, t=0.0, quad=None):
    """Balance report dC/dt + net flux for a dynamical conservation law."""
    sol = _resolve_solution(sol)
    quad = quad or QuadratureSpec()
    T, X = c.density, c.flux
    if c.closed_domain:
        X = None
    if c.kind == VOLUMETRIC:
        if not isinstance(dom, Box):
            raise DomainError("volumetric laws are checked on boxes")
        C = integrate(T, dom, sol, t, quad)
        dT = total_dt(T)
        dCdt = integrate(dT, dom, sol, t, quad)
        F = integrate(X, dom.boundary(), sol, t, quad)
    elif c.kind == SURFACE_FLUX:
        if isinstance(dom, PlanarRect):
            C = integrate(T, dom, sol, t, quad)
            dCdt = integrate(vector_total_dt(T), dom, sol, t, quad)
            F = 0.0 if X is None else integrate(X, dom.boundary(), sol, t, quad)
        elif isinstance(dom, BoxBoundary):
            C = integrate(T, dom, sol, t, quad)
            dCdt = integrate(vector_total_dt(T), dom, sol, t, quad)
            F = 0.0
        else:
            raise DomainError("surface-flux laws are checked on rectangles "
                              "or closed box boundaries")
    elif c.kind == CIRCULATORY:
        if isinstance(dom, Segment):
            C = integrate(T, dom, sol, t, quad)
            dCdt = integrate(vector_total_dt(T), dom, sol, t, quad)
            F = 0.0 if X is None else _endpoint_flow(X, sol, dom, t)
        elif isinstance(dom, Circle):
            C = integrate(T, dom, sol, t, quad)
            dCdt = integrate(vector_total_dt(T), dom, sol, t, quad)
            F = 0.0
        else:
            raise DomainError("circulatory laws are checked on segments or "
                              "circles")
    else:
        raise DomainError("balance residuals apply to dynamical laws")
    # independent cross-check of the symbolic time derivative
    h = 1e-5 * max(1.0, abs(t))
    Cp = integrate(T, dom, sol, t + h, quad)
    Cm = integrate(T, dom, sol, t - h, quad)
    report = IntegralReport(C, F, dCdt, dCdt_fd=(Cp - Cm) / (2 * h))
    return report


def topological_residual(c, dom, sol, t=0.0, quad=None):
    """Closed-domain integral of a spatial law; zero within tolerance when
    the law holds throughout the domain."""
    sol = _resolve_solution(sol)
    quad = quad or QuadratureSpec()
    X = c.flux
    if c.kind == SPATIAL_DIV:
        if not isinstance(dom, BoxBoundary):
            raise DomainError("flux laws are checked on closed box "
                              "boundaries")
        C = integrate(X, dom, sol, t, quad)
    elif c.kind == SPATIAL_CURL:
        if not isinstance(dom, Circle):
            raise DomainError("circulation laws are checked on closed "
                              "curves")
        C = integrate(X, dom, sol, t, quad)
    elif c.kind == SPATIAL_GRAD:
        if not isinstance(dom, Segment):
            raise DomainError("gradient laws compare the flux at two "
                              "points")
        C = _endpoint_flow(X, sol, dom, t)
    else:
        raise DomainError("topological residuals apply to spatial laws")
    return IntegralReport(C, 0.0, 0.0)


def refine_and_certify(producer, quad=None):
    """Repeat a report with the points per axis doubled each level.

    Convergence is certified when the residual magnitudes decrease
    monotonically or sit below the absolute floor; otherwise a
    ConvergenceWarning is issued and recorded on the report.
    """
    quad = quad or QuadratureSpec()
    table = []
    reports = []
    for level in range(quad.refinement_levels):
        q = quad.refined(2 ** level)
        rep = producer(q)
        table.append((q.points_per_axis, rep.residual,
                      rep.relative_residual))
        reports.append(rep)
    final = reports[-1]
    final.refinement_table = table
    ok = True
    for (_, r0, _), (_, r1, _) in zip(table, table[1:]):
        if abs(r1) > abs(r0) and abs(r1) > ABS_FLOOR:
            ok = False
    final.converged = ok
    if not ok:
        warnings.warn("residuals did not decrease under refinement",
                      ConvergenceWarning)
    return final


def two_surface_flux(c, outer, inner, sol, t=0.0, quad=None):
    """Flux difference between two nested closed surfaces.

    Realizes the hollow-domain form of a topological flux law: both fluxes
    agree when the law holds between the surfaces.
    """
    sol = _resolve_solution(sol)
    quad = quad or QuadratureSpec()
    fo = integrate(c.flux, outer, sol, t, quad)
    fi = integrate(c.flux, inner, sol, t, quad)
    return fo - fi, fo, fi


def gauss_consistency(F, box, t=0.0, quad=None):
    """| closed-surface flux - volume integral of Div F | for a polynomial
    coordinate field; a quadrature consistency check of Gauss' theorem."""
    quad = quad or QuadratureSpec()
    lhs = integrate(F, box.boundary(), None, t, quad)
    rhs = integrate(tdiv(F), box, None, t, quad)
    return abs(lhs - rhs), lhs, rhs


def stokes_consistency(F, rect, t=0.0, quad=None):
    """| boundary circulation - surface integral of Curl F | on a planar
    rectangle; a quadrature consistency check of Stokes' theorem."""
    quad = quad or QuadratureSpec()
    lhs = integrate(F, rect.boundary(), None, t, quad)
    rhs = integrate(tcurl(F), rect, None, t, quad)
    return abs(lhs - rhs), lhs, rhs
