"""Conserved currents of the six kinds, local verification, triviality
classification with verified witnesses or certificates, boundary constants
of motion, and equivalence testing.

Classification is sound by construction: a trivial verdict always carries a
witness that re-substitutes to a zero residual, a non-trivial verdict always
carries a checkable certificate, and exhaustion of the bounded search yields
an inconclusive verdict rather than a guess.
"""
from __future__ import annotations

from fractions import Fraction

from .expr import (
    Expr, VectorExpr, ZERO, VZERO, ShapeError, as_expr, jet, jet_info,
    is_jet_atom, is_coord_atom, is_param_atom, is_opaque_atom,
    opaque_info, coord, format_expr, _pconst,
)
from . import jetcalc as jc
from .jetcalc import (
    total_dt, tgrad, tdiv, tcurl, vector_total_dt, spatial_euler,
    is_total_div, is_total_curl, is_total_grad, homotopy_witness,
    solve_linear_combination, WitnessUnavailable, UnsupportedClass,
)
from .sysdef import PdeSystem, system

VOLUMETRIC = "volumetric"
SURFACE_FLUX = "surface-flux"
CIRCULATORY = "circulatory"
SPATIAL_DIV = "spatial-div"
SPATIAL_CURL = "spatial-curl"
SPATIAL_GRAD = "spatial-grad"

DYNAMICAL_KINDS = (VOLUMETRIC, SURFACE_FLUX, CIRCULATORY)
SPATIAL_KINDS = (SPATIAL_DIV, SPATIAL_CURL, SPATIAL_GRAD)

TRIVIAL_I = "trivial-I"
TRIVIAL_IIA = "trivial-IIa"
TRIVIAL_IIB = "trivial-IIb"
NONTRIVIAL = "nontrivial"
INCONCLUSIVE = "inconclusive"


class ConservedCurrent:
    """Density/flux data of a conservation law of one of the six kinds.

    Shapes: volumetric (scalar T, vector X), surface-flux (vector T, vector
    X), circulatory (vector T, scalar X), spatial-div (vector X only),
    spatial-curl (vector X only), spatial-grad (scalar X only).  A current
    flagged ``closed_domain`` is a boundary constant of motion: its density
    is integrated over closed surfaces or curves only and its defining
    residual is the purely temporal one.
    """

    def __init__(self, cid, kind, system_id, density=None, flux=None,
                 description="", closed_domain=False):
        self.id = cid
        self.kind = kind
        self.system_id = system_id
        self.density = density
        self.flux = flux
        self.description = description
        self.closed_domain = closed_domain
        self._check_shape()

    def _check_shape(self):
        k = self.kind
        T, X = self.density, self.flux
        def scalar(v):
            return isinstance(v, Expr)
        def vector(v):
            return isinstance(v, VectorExpr)
        ok = {
            VOLUMETRIC: scalar(T) and vector(X),
            SURFACE_FLUX: vector(T) and vector(X),
            CIRCULATORY: vector(T) and scalar(X),
            SPATIAL_DIV: T is None and vector(X),
            SPATIAL_CURL: T is None and vector(X),
            SPATIAL_GRAD: T is None and scalar(X),
        }.get(k)
        if ok is None:
            raise ShapeError("unknown conservation-law kind %r" % k)
        if not ok:
            raise ShapeError("density/flux shapes do not match kind %r" % k)

    def __repr__(self):
        return "<ConservedCurrent %s (%s on %s)>" % (self.id, self.kind,
                                                     self.system_id)


class TrivialityVerdict:
    def __init__(self, status, witness=None, certificate=None,
                 boundary_law=None, diagnostics=(), order_bound=None):
        self.status = status
        self.witness = witness or {}
        self.certificate = certificate
        self.boundary_law = boundary_law
        self.diagnostics = list(diagnostics)
        self.order_bound = order_bound

    @property
    def is_trivial(self):
        return self.status in (TRIVIAL_I, TRIVIAL_IIA, TRIVIAL_IIB)

    def note(self, msg):
        self.diagnostics.append(msg)
        return self

    def __repr__(self):
        return "<TrivialityVerdict %s>" % self.status


# ---------------------------------------------------------------------------
# local verification

def verify_local(c, sys=None):
    """Residual(s) of the defining combination, reduced on solutions.

    The conservation law holds exactly when every returned expression is the
    zero literal.
    """
    sys = system(c.system_id) if sys is None else sys
    T, X = c.density, c.flux
    if c.closed_domain:
        if c.kind == SURFACE_FLUX:
            return sys.reduce(tdiv(vector_total_dt(T)))
        if c.kind == CIRCULATORY:
            return sys.reduce(tcurl(vector_total_dt(T)))
        raise ShapeError("closed-domain flag applies to boundary laws only")
    if c.kind == VOLUMETRIC:
        return sys.reduce(total_dt(T) + tdiv(X))
    if c.kind == SURFACE_FLUX:
        return sys.reduce(vector_total_dt(T) + tcurl(X))
    if c.kind == CIRCULATORY:
        return sys.reduce(vector_total_dt(T) + tgrad(X))
    if c.kind == SPATIAL_DIV:
        return sys.reduce(tdiv(X))
    if c.kind == SPATIAL_CURL:
        return sys.reduce(tcurl(X))
    if c.kind == SPATIAL_GRAD:
        return sys.reduce(tgrad(X))
    raise ShapeError("unknown kind %r" % c.kind)


def residual_is_zero(r):
    return r.is_zero


def holds_locally(c, sys=None):
    return residual_is_zero(verify_local(c, sys))


# ---------------------------------------------------------------------------
# candidate generation for the bounded witness search

def _monomial_exprs(e):
    e = as_expr(e)
    den = Expr(e.den, _pconst(1))
    for m, coeff in e.num.items():
        rest = tuple((a, x) for a, x in m if not is_param_atom(a))
        yield Expr({rest: Fraction(1)}, _pconst(1)) / den


def _lowered(mono):
    """One-step transforms whose spatial derivative could produce mono."""
    out = set()
    for aid in mono.jet_atom_ids():
        dep, idx = jet_info(aid)
        a = jet(dep, idx)
        order1 = len(idx) == 1
        for axis in ("x1", "x2", "x3"):
            if axis in idx:
                low = list(idx)
                low.remove(axis)
                out.add(mono / a * jet(dep, tuple(low)))
        if order1:
            out.add(mono / a)
    for aid in mono.atom_ids():
        if is_opaque_atom(aid):
            fn, args = opaque_info(aid)
            if fn.dindex:
                root = fn.base
                out.add(mono / fn(*args) * root(*args))
    return out


def _raised(mono):
    return {mono * coord(ax) for ax in ("x1", "x2", "x3")}


def witness_candidates(seeds, sys, order_bound, max_candidates=900):
    """Monomial candidate space for witnesses, grown from the seeds.

    Seeds are the reduced expressions the witness must reproduce; the space
    is their monomials closed (to depth two) under index lowering, removal
    of first-order factors, un-deriving of constitutive functions, and
    multiplication by a coordinate, plus the zeroth-order dependents and the
    system's declared constitutive functions.
    """
    base = set()
    for e in seeds:
        if isinstance(e, VectorExpr):
            for comp in e:
                base.update(_monomial_exprs(comp))
        else:
            base.update(_monomial_exprs(e))
    frontier = set(base)
    for _ in range(2):
        new = set()
        for mono in frontier:
            new |= _lowered(mono)
        frontier = new - base
        base |= new
    for dep in sys.dependents:
        base.add(jet(dep))
    raised = set()
    for mono in set(base):
        raised |= _raised(mono)
    base |= raised
    seen_args = set()
    for mono in list(base):
        for aid in mono.atom_ids():
            if is_opaque_atom(aid):
                fn, args = opaque_info(aid)
                seen_args.add((len(args), args))
    for fn in sys.functions:
        for arity, args in seen_args:
            if arity == fn.arity:
                base.add(fn(*args))
    base.add(Expr.const(1))
    out = [m for m in base if m.jet_order() <= order_bound]
    out.sort(key=lambda e: (sorted(e.num), sorted(e.den)))
    if len(out) > max_candidates:
        out = out[:max_candidates]
    return out


def _flat(conds):
    out = []
    for e in conds:
        if isinstance(e, VectorExpr):
            out.extend(list(e))
        else:
            out.append(e)
    return out


def _linear_witness_search(sys, shape, target, contribs, seeds, order_bound):
    """Solve target + sum of linear contributions == 0 on solutions.

    shape: "scalar"/"vector" per unknown; target: list of Expr/VectorExpr;
    contribs[ui](field) yields the same-shaped condition contribution of
    unknown ui alone and must be linear in the field.  The unknowns are
    expanded over the candidate monomials grown from the seeds.
    """
    cands = witness_candidates(seeds, sys, order_bound)
    tgt = [sys.reduce(e) for e in _flat(target)]
    slots = []
    columns = []
    for ui, us in enumerate(shape):
        ncomp = 1 if us == "scalar" else 3
        for comp in range(ncomp):
            for m in cands:
                if us == "scalar":
                    field = m
                else:
                    vecc = [ZERO, ZERO, ZERO]
                    vecc[comp] = m
                    field = VectorExpr(*vecc)
                col = [sys.reduce(e) for e in _flat(contribs[ui](field))]
                if all(e.is_zero for e in col):
                    continue
                slots.append((ui, comp, m))
                columns.append(col)
    coeffs = solve_linear_combination(columns, [ZERO - t for t in tgt])
    if coeffs is None:
        return None
    fields = []
    for us in shape:
        fields.append(ZERO if us == "scalar" else [ZERO, ZERO, ZERO])
    for c, (ui, comp, m) in zip(coeffs, slots):
        if c.is_zero:
            continue
        if shape[ui] == "scalar":
            fields[ui] = fields[ui] + c * m
        else:
            fields[ui][comp] = fields[ui][comp] + c * m
    return tuple(f if not isinstance(f, list) else VectorExpr(*f)
                 for f in fields)


# ---------------------------------------------------------------------------
# shared helpers

def _reduced_order_zero_essential(sys, e):
    """Reduced expression of jet order zero that still involves dependents."""
    if isinstance(e, VectorExpr):
        red = sys.reduce(e)
        return (all(c.jet_order() == 0 for c in red)
                and any(c.jet_atom_ids() for c in red))
    red = sys.reduce(e)
    return red.jet_order() == 0 and bool(red.jet_atom_ids())


def _min_equation_order(sys):
    return min((as_expr(g).jet_order() for g in sys.equations), default=0)


def _is_constant_on_solutions(sys, e):
    red = sys.reduce(e)
    return not red.jet_atom_ids() and not any(
        is_coord_atom(a) or is_opaque_atom(a) for a in red.atom_ids())


def _nonzero_on_solutions(sys, e):
    if isinstance(e, VectorExpr):
        return not sys.reduce(e).is_zero
    return not sys.reduce(e).is_zero


def _default_bound(c, order_bound):
    if order_bound is not None:
        return order_bound
    orders = []
    for part in (c.density, c.flux):
        if isinstance(part, VectorExpr):
            orders.extend(x.jet_order() for x in part)
        elif isinstance(part, Expr):
            orders.append(part.jet_order())
    return max(orders, default=0) + 1


def _try_identical(fn, *args):
    try:
        return fn(*args)
    except (WitnessUnavailable, UnsupportedClass):
        return None


def _safe_exactness(test, arg):
    """Exactness tests reject constitutive functions of jet variables;
    treat that as an inapplicable identical path, not an error."""
    try:
        return test(arg)
    except UnsupportedClass:
        return False


def _temporal_check(sys, e):
    """Zero literal reads as time-independent; a nonzero normal form is
    reported as time dependent for a generic solution."""
    return sys.reduce(e).is_zero


# ---------------------------------------------------------------------------
# classification: circulatory

def classify_circulatory(c, sys=None, order_bound=None):
    sys = system(c.system_id) if sys is None else sys
    if c.kind != CIRCULATORY:
        raise ShapeError("expected a circulatory current")
    bound = _default_bound(c, order_bound)
    T, X = c.density, c.flux
    v = None

    curlT = sys.reduce(tcurl(T))
    if not curlT.is_zero:
        return TrivialityVerdict(
            NONTRIVIAL, certificate=("curl-of-density-nonzero", curlT),
            order_bound=bound).note(
            "Curl of the circulation density has a nonzero normal form "
            "on solutions; locally and globally non-trivial.")

    redT = sys.reduce(T)
    redX = sys.reduce(X)

    # prefer the identical decomposition: it carries the boundary content
    theta = None
    if _safe_exactness(is_total_grad, T):
        theta0 = _try_identical(homotopy_witness, T, "grad")
        if theta0 is not None and sys.reduce(X + total_dt(theta0)).is_zero:
            theta = theta0
    if theta is None and redT.is_zero and redX.is_zero:
        return TrivialityVerdict(
            TRIVIAL_I, witness={"theta": ZERO},
            order_bound=bound).note("density and flow vanish on solutions")
    if theta is None:
        found = _linear_witness_search(
            sys, ["scalar"], [T, X],
            [lambda th: [-tgrad(th), total_dt(th)]],
            [redT, redX], bound)
        if found is not None:
            theta = found[0]
    if theta is not None:
        ok = sys.reduce(T - tgrad(theta)).is_zero \
            and sys.reduce(X + total_dt(theta)).is_zero
        if ok:
            status = TRIVIAL_I if _is_constant_on_solutions(sys, theta) \
                else TRIVIAL_IIB
            v = TrivialityVerdict(status, witness={"theta": theta},
                                  order_bound=bound)
            if status == TRIVIAL_IIB:
                v.note("circulatory type II: potential is non-constant "
                       "on solutions")
            return v

    if _reduced_order_zero_essential(sys, T) and _min_equation_order(sys) >= 1:
        return TrivialityVerdict(
            NONTRIVIAL, certificate=("order-obstruction", bound),
            order_bound=bound).note(
            "order-zero density with essential dependence cannot be a "
            "total gradient plus terms vanishing on solutions; the bounded "
            "witness search (including explicit-coordinate candidates) was "
            "exhausted first")
    return TrivialityVerdict(INCONCLUSIVE, order_bound=bound).note(
        "witness search exhausted at jet order %d" % bound)


# ---------------------------------------------------------------------------
# classification: surface-flux

def classify_surfaceflux(c, sys=None, order_bound=None):
    sys = system(c.system_id) if sys is None else sys
    if c.kind != SURFACE_FLUX:
        raise ShapeError("expected a surface-flux current")
    bound = _default_bound(c, order_bound)
    T, X = c.density, c.flux

    divT = sys.reduce(tdiv(T))
    if not divT.is_zero:
        return TrivialityVerdict(
            NONTRIVIAL, certificate=("div-of-density-nonzero", divT),
            order_bound=bound).note(
            "divergence of the flux density has a nonzero normal form on "
            "solutions; locally and globally non-trivial.")

    redT = sys.reduce(T)
    redX = sys.reduce(X)

    theta = lam = None
    if _safe_exactness(is_total_curl, T):
        theta0 = _try_identical(homotopy_witness, T, "curl")
        if theta0 is not None:
            R = sys.reduce(X + vector_total_dt(theta0))
            if R.is_zero:
                theta, lam = theta0, ZERO
            elif _safe_exactness(is_total_grad, R):
                lam0 = _try_identical(homotopy_witness, R, "grad")
                if lam0 is not None:
                    theta, lam = theta0, lam0
            if theta is None:
                found = _linear_witness_search(
                    sys, ["scalar"], [R], [lambda l: [-tgrad(l)]],
                    [R], bound)
                if found is not None:
                    theta, lam = theta0, found[0]
    if theta is None and redT.is_zero and redX.is_zero:
        return TrivialityVerdict(TRIVIAL_I,
                                 witness={"theta": VZERO, "lambda": ZERO},
                                 order_bound=bound)
    if theta is None:
        found = _linear_witness_search(
            sys, ["vector", "scalar"], [T, X],
            [lambda th: [-tcurl(th), vector_total_dt(th)],
             lambda l: [VZERO, -tgrad(l)]],
            [redT, redX], bound)
        if found is not None:
            theta, lam = found

    if theta is not None:
        ok = sys.reduce(T - tcurl(theta)).is_zero and \
            sys.reduce(X + vector_total_dt(theta) - tgrad(lam)).is_zero
        if ok:
            theta_red = sys.reduce(theta)
            lam_red = sys.reduce(lam)
            if theta_red.is_zero:
                status = TRIVIAL_I if lam_red.is_zero else TRIVIAL_IIA
            else:
                status = TRIVIAL_IIB
            v = TrivialityVerdict(status,
                                  witness={"theta": theta, "lambda": lam},
                                  order_bound=bound)
            if status == TRIVIAL_IIB:
                _attach_boundary_law(v, c, sys)
            return v

    if _reduced_order_zero_essential(sys, T) and _min_equation_order(sys) >= 1:
        return TrivialityVerdict(
            NONTRIVIAL, certificate=("order-obstruction", bound),
            order_bound=bound).note(
            "order-zero density with essential dependence cannot be a "
            "total curl plus terms vanishing on solutions; the bounded "
            "witness search was exhausted first")
    return TrivialityVerdict(INCONCLUSIVE, order_bound=bound).note(
        "witness search exhausted at jet order %d" % bound)


# ---------------------------------------------------------------------------
# classification: volumetric

def classify_volumetric(c, sys=None, order_bound=None):
    sys = system(c.system_id) if sys is None else sys
    if c.kind != VOLUMETRIC:
        raise ShapeError("expected a volumetric current")
    bound = _default_bound(c, order_bound)
    T, X = c.density, c.flux
    diag = []
    if T.jet_order() >= sys.order:
        diag.append("density order %d is not below the system order %d; "
                    "the spatial-Euler test is skipped" %
                    (T.jet_order(), sys.order))

    redT = sys.reduce(T)
    redX = sys.reduce(X)

    theta = lam = None
    if _safe_exactness(is_total_div, T):
        theta0 = _try_identical(homotopy_witness, T, "div")
        if theta0 is not None:
            R = sys.reduce(X + vector_total_dt(theta0))
            if R.is_zero:
                theta, lam = theta0, VZERO
            elif _safe_exactness(is_total_curl, R):
                lam0 = _try_identical(homotopy_witness, R, "curl")
                if lam0 is not None:
                    theta, lam = theta0, lam0
            if theta is None:
                found = _linear_witness_search(
                    sys, ["vector"], [R], [lambda l: [-tcurl(l)]],
                    [R], bound)
                if found is not None:
                    theta, lam = theta0, found[0]
    if theta is None and redT.is_zero and redX.is_zero:
        return TrivialityVerdict(TRIVIAL_I,
                                 witness={"theta": VZERO, "lambda": VZERO},
                                 diagnostics=diag, order_bound=bound)
    if theta is None:
        found = _linear_witness_search(
            sys, ["vector", "vector"], [T, X],
            [lambda th: [-tdiv(th), vector_total_dt(th)],
             lambda l: [ZERO, -tcurl(l)]],
            [redT, redX], bound)
        if found is not None:
            theta, lam = found

    if theta is not None:
        ok = sys.reduce(T - tdiv(theta)).is_zero and \
            sys.reduce(X + vector_total_dt(theta) - tcurl(lam)).is_zero
        if ok:
            theta_red = sys.reduce(theta)
            lam_red = sys.reduce(lam)
            if theta_red.is_zero:
                status = TRIVIAL_I if lam_red.is_zero else TRIVIAL_IIA
            else:
                status = TRIVIAL_IIB
            v = TrivialityVerdict(status,
                                  witness={"theta": theta, "lambda": lam},
                                  diagnostics=diag, order_bound=bound)
            if status == TRIVIAL_IIB:
                _attach_boundary_law(v, c, sys)
            return v

    if T.jet_order() < sys.order:
        for dep in sys.dependents:
            ev = spatial_euler(T, dep)
            if not ev.is_zero:
                return TrivialityVerdict(
                    NONTRIVIAL,
                    certificate=("spatial-euler-nonzero", dep, ev),
                    diagnostics=diag, order_bound=bound).note(
                    "spatial Euler operator in %s is nonzero off solutions "
                    "(density order %d below the system order %d) and the "
                    "bounded witness search was exhausted"
                    % (dep, T.jet_order(), sys.order))
    if _reduced_order_zero_essential(sys, T) and _min_equation_order(sys) >= 1:
        return TrivialityVerdict(
            NONTRIVIAL, certificate=("order-obstruction", bound),
            diagnostics=diag, order_bound=bound).note(
            "order-zero density with essential dependence cannot be a "
            "total divergence plus terms vanishing on solutions; the "
            "bounded witness search was exhausted first")
    return TrivialityVerdict(INCONCLUSIVE, diagnostics=diag,
                             order_bound=bound).note(
        "witness search exhausted at jet order %d" % bound)


# ---------------------------------------------------------------------------
# classification: topological kinds

def classify_topological(c, sys=None, order_bound=None):
    sys = system(c.system_id) if sys is None else sys
    bound = _default_bound(c, order_bound)
    X = c.flux

    if c.kind == SPATIAL_GRAD:
        red = sys.reduce(X)
        if _is_constant_on_solutions(sys, X):
            return TrivialityVerdict(TRIVIAL_I, witness={"theta": red},
                                     order_bound=bound).note(
                "flux is constant on solutions")
        return TrivialityVerdict(
            NONTRIVIAL, certificate=("order-obstruction", bound),
            order_bound=bound).note(
            "flux has essential non-constant dependence on solutions; the "
            "gradient law carries pointwise information")

    if c.kind == SPATIAL_DIV:
        witness_kind, op, test = "curl", tcurl, is_total_curl
    elif c.kind == SPATIAL_CURL:
        witness_kind, op, test = "grad", tgrad, is_total_grad
    else:
        raise ShapeError("expected a spatial (topological) kind")

    redX = sys.reduce(X)
    theta = None
    if _safe_exactness(test, X):
        theta = _try_identical(homotopy_witness, X, witness_kind)
    if theta is None:
        if redX.is_zero:
            return TrivialityVerdict(
                TRIVIAL_I,
                witness={"theta": VZERO if c.kind == SPATIAL_DIV else ZERO},
                order_bound=bound)
        if c.kind == SPATIAL_DIV:
            found = _linear_witness_search(
                sys, ["vector"], [X], [lambda th: [-tcurl(th)]],
                [redX], bound)
        else:
            found = _linear_witness_search(
                sys, ["scalar"], [X], [lambda th: [-tgrad(th)]],
                [redX], bound)
        if found is not None:
            theta = found[0]
    if theta is not None:
        residual = sys.reduce(X - op(theta))
        if residual.is_zero:
            theta_red = sys.reduce(theta)
            status = TRIVIAL_I if theta_red.is_zero else TRIVIAL_IIB
            return TrivialityVerdict(status, witness={"theta": theta},
                                     order_bound=bound).note(
                "flux is an exact spatial differential off solutions"
                if _safe_exactness(test, X) else "witness found by bounded search")
    if _reduced_order_zero_essential(sys, X) and _min_equation_order(sys) >= 1:
        return TrivialityVerdict(
            NONTRIVIAL, certificate=("order-obstruction", bound),
            order_bound=bound).note(
            "order-zero density with essential dependence cannot be an "
            "exact spatial differential plus terms vanishing on solutions; "
            "the bounded witness search was exhausted first")
    return TrivialityVerdict(INCONCLUSIVE, order_bound=bound).note(
        "witness search exhausted at jet order %d" % bound)


def classify(c, sys=None, order_bound=None):
    sys = system(c.system_id) if sys is None else sys
    if c.kind == VOLUMETRIC:
        return classify_volumetric(c, sys, order_bound)
    if c.kind == SURFACE_FLUX:
        return classify_surfaceflux(c, sys, order_bound)
    if c.kind == CIRCULATORY:
        return classify_circulatory(c, sys, order_bound)
    return classify_topological(c, sys, order_bound)


# ---------------------------------------------------------------------------
# boundary constants of motion

def _attach_boundary_law(v, c, sys):
    law = detect_boundary_law(v, c, sys)
    if law is not None:
        v.boundary_law = law
        v.note("type IIb with time-independent boundary integrand: "
               "induces a boundary constant of motion")
    return v


def detect_boundary_law(v, c, sys=None):
    """Boundary constant of motion induced by a type IIb witness.

    For a volumetric current the check is that D_t Div Theta vanishes on
    solutions, yielding a closed-surface flux constant; for a surface-flux
    current it is D_t Curl Theta, yielding a closed-curve circulation
    constant.  Time independence is decided symbolically: a nonzero normal
    form is read as time dependence for a generic solution.
    """
    sys = system(c.system_id) if sys is None else sys
    if v.status != TRIVIAL_IIB:
        return None
    theta = v.witness.get("theta")
    if not isinstance(theta, VectorExpr):
        return None
    if c.kind == VOLUMETRIC:
        if _temporal_check(sys, total_dt(tdiv(theta))):
            return ConservedCurrent(
                (c.id or "current") + "-boundary", SURFACE_FLUX, c.system_id,
                density=theta, flux=VZERO,
                description="closed-surface flux constant of motion from %s"
                            % (c.id or "a type IIb volumetric law"),
                closed_domain=True)
    elif c.kind == SURFACE_FLUX:
        if all(sys.reduce(comp).is_zero
               for comp in vector_total_dt(tcurl(theta))):
            return ConservedCurrent(
                (c.id or "current") + "-boundary", CIRCULATORY, c.system_id,
                density=theta, flux=ZERO,
                description="closed-curve circulation constant of motion "
                            "from %s" % (c.id or "a type IIb surface law"),
                closed_domain=True)
    return None


def induced_temporal_current(c, sys=None):
    """The purely temporal current carried by a spatial constraint law."""
    sys = system(c.system_id) if sys is None else sys
    if c.kind == SPATIAL_DIV:
        return ConservedCurrent(
            (c.id or "constraint") + "-temporal", VOLUMETRIC, c.system_id,
            density=tdiv(c.flux), flux=VZERO,
            description="time derivative of the divergence constraint")
    if c.kind == SPATIAL_CURL:
        return ConservedCurrent(
            (c.id or "constraint") + "-temporal", SURFACE_FLUX, c.system_id,
            density=tcurl(c.flux), flux=VZERO,
            description="time derivative of the curl constraint")
    raise ShapeError("temporal currents arise from div or curl constraints")


def boundary_constant_of_motion(c, sys=None, order_bound=None):
    """Constant of motion on closed boundaries induced by a spatial law.

    A divergence constraint Div X = 0 carries the purely temporal law
    D_t Div X = 0 and hence a closed-surface flux constant of motion with
    density X; a curl constraint carries the closed-curve circulation
    analog.  The temporal check is symbolic and always holds when the
    constraint itself is verified, since the solved forms generate a
    differential ideal.
    """
    sys = system(c.system_id) if sys is None else sys
    theta = c.flux
    if c.kind == SPATIAL_DIV:
        if not sys.reduce(tdiv(theta)).is_zero:
            return None
        if not _temporal_check(sys, total_dt(tdiv(theta))):
            return None
        return ConservedCurrent(
            (c.id or "constraint") + "-boundary", SURFACE_FLUX, c.system_id,
            density=theta, flux=VZERO,
            description="closed-surface flux constant of motion from the "
                        "divergence law %s" % (c.id or ""),
            closed_domain=True)
    if c.kind == SPATIAL_CURL:
        if not sys.reduce(tcurl(theta)).is_zero:
            return None
        if not all(sys.reduce(e).is_zero
                   for e in vector_total_dt(tcurl(theta))):
            return None
        return ConservedCurrent(
            (c.id or "constraint") + "-boundary", CIRCULATORY, c.system_id,
            density=theta, flux=ZERO,
            description="closed-curve circulation constant of motion from "
                        "the curl law %s" % (c.id or ""),
            closed_domain=True)
    raise ShapeError("boundary constants arise from div or curl constraints")


# ---------------------------------------------------------------------------
# equivalence

def difference_current(c1, c2):
    if c1.kind != c2.kind or c1.system_id != c2.system_id:
        raise ShapeError("currents must share kind and system")
    T = None
    if c1.density is not None:
        T = c1.density - c2.density
    X = c1.flux - c2.flux
    return ConservedCurrent("%s-minus-%s" % (c1.id, c2.id), c1.kind,
                            c1.system_id, density=T, flux=X)


def equivalent(c1, c2, sys=None, order_bound=None):
    """True/False when the difference classifies definitely, else None."""
    sys = system(c1.system_id) if sys is None else sys
    d = difference_current(c1, c2)
    v = classify(d, sys, order_bound)
    if v.is_trivial:
        return True
    if v.status == NONTRIVIAL:
        return False
    return None
