"""Total derivatives, total vector calculus, Euler operators, exactness
tests, and constructive witnesses for exact total differentials.

Conventions: Cartesian frame (t, x1, x2, x3); spatial axes are numbered
1..3.  All operators act on canonical expressions from conslaw.expr and
return canonical expressions.
"""
from __future__ import annotations

from fractions import Fraction

from .expr import (
    COORD_NAMES, SPATIAL_NAMES, Expr, VectorExpr, ZERO, ONE, VZERO,
    as_expr, atom_of, coord, jet, jet_info, opaque_info,
    is_jet_atom, is_coord_atom, is_opaque_atom, is_param_atom,
    UnsupportedClass, ExprError, _patom, _pconst, _pvars,
)


class WitnessUnavailable(ExprError):
    pass


# ---------------------------------------------------------------------------
# variational partial: d e / d atom, chain-ruling through opaque arguments

def partial_wrt(e, aid):
    e = as_expr(e)
    out = e.diff_atom(aid)
    for oa in e.atom_ids():
        if not is_opaque_atom(oa) or oa == aid:
            continue
        outer = e.diff_atom(oa)
        if outer.is_zero:
            continue
        inner = _opaque_partial_wrt(oa, aid)
        if not inner.is_zero:
            out = out + outer * inner
    return out


def _opaque_partial_wrt(oa, aid):
    fn, args = opaque_info(oa)
    total = ZERO
    for i, a in enumerate(args):
        da = partial_wrt(a, aid)
        if not da.is_zero:
            total = total + fn.partial(i, args) * da
    return total


# ---------------------------------------------------------------------------
# total derivatives

def _datom(aid, cname):
    """Total derivative of a single atom along coordinate cname."""
    if is_coord_atom(aid):
        from .expr import coord_name
        return ONE if coord_name(aid) == cname else ZERO
    if is_param_atom(aid):
        return ZERO
    if is_jet_atom(aid):
        dep, idx = jet_info(aid)
        return jet(dep, idx + (cname,))
    fn, args = opaque_info(aid)
    total = ZERO
    for i, a in enumerate(args):
        da = total_d(a, cname)
        if not da.is_zero:
            total = total + fn.partial(i, args) * da
    return total


def total_d(e, cname):
    e = as_expr(e)
    out = ZERO
    for aid in e.atom_ids():
        g = e.diff_atom(aid)
        if g.is_zero:
            continue
        d = _datom(aid, cname)
        if not d.is_zero:
            out = out + g * d
    return out


def total_dt(e):
    """Total derivative with respect to t (chain rule over jet space)."""
    return total_d(e, "t")


def total_di(e, i):
    """Total derivative along spatial axis i in {1,2,3}."""
    if i not in (1, 2, 3):
        raise ExprError("spatial axis must be 1, 2 or 3")
    return total_d(e, SPATIAL_NAMES[i - 1])


def total_d_multi(e, index):
    """Apply total derivatives for every coordinate in the multi-index."""
    out = as_expr(e)
    for c in sorted(index, key=COORD_NAMES.index):
        out = total_d(out, c)
    return out


def tgrad(f):
    f = as_expr(f)
    return VectorExpr(total_di(f, 1), total_di(f, 2), total_di(f, 3))


def tdiv(F):
    return total_di(F[0], 1) + total_di(F[1], 2) + total_di(F[2], 3)


def tcurl(F):
    return VectorExpr(
        total_di(F[2], 2) - total_di(F[1], 3),
        total_di(F[0], 3) - total_di(F[2], 1),
        total_di(F[1], 1) - total_di(F[0], 2),
    )


def vector_total_dt(F):
    return VectorExpr(total_dt(F[0]), total_dt(F[1]), total_dt(F[2]))


# ---------------------------------------------------------------------------
# Euler operators

def _jet_atoms_of(e, dep):
    return [a for a in e.jet_atom_ids() if jet_info(a)[0] == dep]


def euler(e, dep):
    """Variational derivative with respect to dependent `dep`, using total
    derivatives over all four coordinates."""
    e = as_expr(e)
    out = ZERO
    for aid in _jet_atoms_of(e, dep):
        _, idx = jet_info(aid)
        g = partial_wrt(e, aid)
        if g.is_zero:
            continue
        term = total_d_multi(g, idx)
        out = out + (term if len(idx) % 2 == 0 else -term)
    return out


def spatial_euler(e, dep, t_order=0):
    """Purely spatial variational derivative.

    Jet variables carrying exactly `t_order` time derivatives of `dep` are
    treated as the dependent tower; the alternating sum runs over spatial
    indices only.
    """
    e = as_expr(e)
    out = ZERO
    for aid in _jet_atoms_of(e, dep):
        _, idx = jet_info(aid)
        nt = sum(1 for c in idx if c == "t")
        if nt != t_order:
            continue
        spatial = tuple(c for c in idx if c != "t")
        g = partial_wrt(e, aid)
        if g.is_zero:
            continue
        term = total_d_multi(g, spatial)
        out = out + (term if len(spatial) % 2 == 0 else -term)
    return out


def _dependents_of(e):
    return sorted({jet_info(a)[0] for a in e.jet_atom_ids()})


def _t_orders_of(e, dep):
    return sorted({sum(1 for c in jet_info(a)[1] if c == "t")
                   for a in e.jet_atom_ids() if jet_info(a)[0] == dep})


def _check_polynomial_class(*exprs):
    for e in exprs:
        e = as_expr(e)
        if any(is_jet_atom(a) for a in _pvars(e.den)):
            raise UnsupportedClass("rational dependence on jet variables")
        for a in e.atom_ids():
            if is_opaque_atom(a):
                fn, args = opaque_info(a)
                for arg in args:
                    if arg.jet_atom_ids():
                        raise UnsupportedClass(
                            "opaque function of jet variables: %s" % fn.name)


def is_total_div(f):
    """True iff f is identically a total spatial divergence."""
    f = as_expr(f)
    _check_polynomial_class(f)
    for dep in _dependents_of(f):
        for k in _t_orders_of(f, dep):
            if not spatial_euler(f, dep, t_order=k).is_zero:
                return False
    # the jet-free residue is a polynomial in coordinates, hence exact
    return True


def is_total_curl(F):
    """True iff F is identically a total curl (equivalently Div F = 0)."""
    return tdiv(F).is_zero


def is_total_grad(F):
    """True iff F is identically a total gradient (equivalently Curl F = 0)."""
    return tcurl(F).is_zero


# ---------------------------------------------------------------------------
# witness construction
#
# The jet-dependent part is handled by the vertical scaling homotopy
# (w -> lambda*w, integrated over lambda in [0,1]) realized as a purely
# algebraic integration-by-parts pass; the coordinate-only residue is
# handled classically.  Every witness is re-verified before it is returned.

def _split_coordinate_part(e):
    e = as_expr(e)
    jets = {a: ZERO for a in e.jet_atom_ids()}
    e0 = e.subs_atoms(jets) if jets else e
    return e - e0, e0


def _jet_degree(mono):
    return sum(exp for aid, exp in mono if is_jet_atom(aid))


def _x_degree(mono):
    return sum(exp for aid, exp in mono
               if is_coord_atom(aid) and _atom_coord(aid) != "t")


def _atom_coord(aid):
    from .expr import coord_name
    return coord_name(aid)


def _weighted_by_jetdeg(e, shift):
    """Divide each monomial by (jet degree + shift)."""
    e = as_expr(e)
    if e.den != _pconst(1):
        raise UnsupportedClass("polynomial expression expected")
    out = ZERO
    for m, c in e.num.items():
        t = Expr({m: c}, _pconst(1))
        out = out + t / Fraction(_jet_degree(m) + shift)
    return out


def _tower_groups(f):
    """Group jet atoms of f by (dependent, t-order) with spatial index."""
    groups = {}
    for aid in f.jet_atom_ids():
        dep, idx = jet_info(aid)
        nt = sum(1 for c in idx if c == "t")
        spatial = tuple(c for c in idx if c != "t")
        groups.setdefault((dep, nt), []).append((aid, spatial))
    return groups


def _div_witness_jet(f):
    """Phi with Div Phi = f for a jet-polynomial f in the kernel of the
    spatial Euler operators, with vanishing coordinate part.

    Realizes the lambda integral of the vertical scaling homotopy as its
    integration-by-parts boundary terms, one per spatial index of each jet
    atom: the k-th boundary term lands in the component of the k-th index.
    """
    comps = [ZERO, ZERO, ZERO]
    for (dep, nt), atoms in _tower_groups(f).items():
        tfac = tuple("t" for _ in range(nt))
        for aid, spatial in atoms:
            n = len(spatial)
            if n == 0:
                continue
            A = partial_wrt(f, aid)
            if A.is_zero:
                continue
            prefix = _weighted_by_jetdeg(A, 1)
            sign = 1
            for k in range(n):
                ck = spatial[k]
                lowered = jet(dep, tfac + spatial[k + 1:])
                term = lowered * prefix
                axis = SPATIAL_NAMES.index(ck)
                comps[axis] = comps[axis] + (term if sign > 0 else -term)
                prefix = total_d(prefix, ck)
                sign = -sign
    return VectorExpr(*comps)


def _coordinate_antiderivative(e, cname):
    """Antiderivative in one coordinate for a polynomial in coordinates."""
    e = as_expr(e)
    if e.den != _pconst(1):
        raise WitnessUnavailable("non-polynomial coordinate part")
    for aid in e.atom_ids():
        if is_opaque_atom(aid) or is_jet_atom(aid):
            raise WitnessUnavailable("coordinate part outside polynomial class")
    x = coord(cname)
    xa = atom_of(x)
    out = ZERO
    for m, c in e.num.items():
        d = 0
        for a, exp in m:
            if a == xa:
                d = exp
        t = Expr({m: c}, _pconst(1))
        out = out + t * x / Fraction(d + 1)
    return out


def _radial_curl_potential(F0):
    """Vector potential of a divergence-free coordinate polynomial field."""
    comps = [ZERO, ZERO, ZERO]
    xvec = VectorExpr(coord("x1"), coord("x2"), coord("x3"))
    for i in range(3):
        e = as_expr(F0[i])
        if e.is_zero:
            continue
        if e.den != _pconst(1) or any(is_opaque_atom(a) for a in e.atom_ids()):
            raise WitnessUnavailable("coordinate part outside polynomial class")
        for m, c in e.num.items():
            d = _x_degree(m)
            mono = Expr({m: c}, _pconst(1)) / Fraction(d + 2)
            fv = [ZERO, ZERO, ZERO]
            fv[i] = mono
            contrib = VectorExpr(*fv).cross(xvec)
            comps = [a + b for a, b in zip(comps, contrib)]
    return VectorExpr(*comps)


def _radial_grad_potential(F0):
    """Scalar potential of a curl-free coordinate polynomial field."""
    out = ZERO
    xs = (coord("x1"), coord("x2"), coord("x3"))
    for i in range(3):
        e = as_expr(F0[i])
        if e.is_zero:
            continue
        if e.den != _pconst(1) or any(is_opaque_atom(a) for a in e.atom_ids()):
            raise WitnessUnavailable("coordinate part outside polynomial class")
        for m, c in e.num.items():
            d = _x_degree(m)
            out = out + Expr({m: c}, _pconst(1)) * xs[i] / Fraction(d + 1)
    return out


# -- bounded linear solver used for grad/curl jet witnesses ------------------

def _lower_candidates(e, axis_name):
    """Monomial candidates whose D_axis could produce monomials of e."""
    cands = set()
    e = as_expr(e)
    xatom = atom_of(coord(axis_name))
    for m, _ in e.num.items():
        base = Expr({m: Fraction(1)}, _pconst(1))
        cands.add(base * coord(axis_name))
        for aid, exp in m:
            if is_jet_atom(aid):
                dep, idx = jet_info(aid)
                if axis_name in idx:
                    lowered = list(idx)
                    lowered.remove(axis_name)
                    repl = base / jet(dep, idx) * jet(dep, tuple(lowered))
                    cands.add(repl)
            elif is_coord_atom(aid) and aid == xatom:
                cands.add(base / coord(axis_name))
    return cands


def _poly_lcm(a, b):
    from .expr import _pgcd, _pdivexact, _pmul
    g = _pgcd(a, b)
    q = _pdivexact(a, g)
    return _pmul(q if q is not None else a, b)


def solve_linear_combination(columns, target_exprs):
    """Solve sum_j c_j * columns[j] == target for coefficients c_j.

    columns[j] and target are equal-length lists of expressions.  The
    coefficients live in the field of rational functions of the parameters;
    they are returned as expressions (or None if the system is
    inconsistent).  Free variables are set to zero.  Exact sparse Gaussian
    elimination.
    """
    from .expr import _pconst
    ncols = len(columns)
    nslots = len(target_exprs)

    equations = {}  # (slot, non-parameter monomial) -> ({col: Expr}, [Expr])
    for k in range(nslots):
        exprs = [as_expr(col[k]) for col in columns] + [as_expr(target_exprs[k])]
        den = _pconst(1)
        for e in exprs:
            if e.den != den and e.den != _pconst(1):
                den = _poly_lcm(den, e.den)
        denx = Expr(den, _pconst(1))
        for j, e in enumerate(exprs):
            e = e * denx
            if e.den != _pconst(1):
                raise ExprError("failed to clear denominators")
            for m, c in e.num.items():
                mpar = tuple((a, x) for a, x in m if is_param_atom(a))
                mrest = tuple((a, x) for a, x in m if not is_param_atom(a))
                cexpr = Expr({mpar: c}, _pconst(1))
                row, rhs = equations.setdefault((k, mrest), ({}, [ZERO]))
                if j < ncols:
                    row[j] = row.get(j, ZERO) + cexpr
                else:
                    rhs[0] = rhs[0] + cexpr

    # cheap pre-pass: a row with a single live column and zero right side
    # forces that coefficient to zero; iterate to a fixpoint
    rows = {}
    for key in sorted(equations):
        row, rhs = equations[key]
        r = {c: v for c, v in row.items() if not v.is_zero}
        rows[key] = (r, rhs[0])
    dead = set()
    changed = True
    while changed:
        changed = False
        for key, (r, b) in rows.items():
            live = [c for c in r if c not in dead]
            if len(live) == 1 and b.is_zero:
                dead.add(live[0])
                changed = True
    echelon = []  # (pivot_col, {col: Expr}, rhs Expr), pivot scaled to one
    for key in sorted(rows):
        r, b = rows[key]
        r = {c: v for c, v in r.items() if c not in dead}
        for pc, prow, prhs in echelon:
            f = r.get(pc)
            if f is not None:
                del r[pc]
                for c, v in prow.items():
                    nv = r.get(c, ZERO) - f * v
                    if nv.is_zero:
                        r.pop(c, None)
                    else:
                        r[c] = nv
                b = b - f * prhs
        if not r:
            if not b.is_zero:
                return None
            continue
        pc = min(r)
        pv = r.pop(pc)
        r = {c: v / pv for c, v in r.items()}
        echelon.append((pc, r, b / pv))

    assign = {}
    for pc, r, b in reversed(echelon):
        val = b
        for c, v in r.items():
            got = assign.get(c)
            if got is not None and not got.is_zero:
                val = val - v * got
        assign[pc] = val
    return [assign.get(j, ZERO) for j in range(ncols)]


def _grad_witness_jet(F):
    candidates = set()
    for i, axis in enumerate(SPATIAL_NAMES):
        candidates |= _lower_candidates(F[i], axis)
    candidates = sorted(candidates, key=lambda e: sorted(e.num))
    columns = [[total_di(c, i + 1) for i in range(3)] for c in candidates]
    coeffs = solve_linear_combination(columns, list(F))
    if coeffs is None:
        raise WitnessUnavailable("no gradient witness in the candidate space")
    out = ZERO
    for c, cand in zip(coeffs, candidates):
        if not c.is_zero:
            out = out + c * cand
    return out


def _curl_witness_jet(F):
    candidates = set()
    for i in range(3):
        e = as_expr(F[i])
        j, k = [a for a in range(3) if a != i]
        candidates |= _lower_candidates(e, SPATIAL_NAMES[j])
        candidates |= _lower_candidates(e, SPATIAL_NAMES[k])
    candidates = sorted(candidates, key=lambda e: sorted(e.num))
    columns = []
    slots = []
    for comp in range(3):
        for cand in candidates:
            vec = [ZERO, ZERO, ZERO]
            vec[comp] = cand
            columns.append(list(tcurl(VectorExpr(*vec))))
            slots.append((comp, cand))
    coeffs = solve_linear_combination(columns, list(F))
    if coeffs is None:
        raise WitnessUnavailable("no curl witness in the candidate space")
    comps = [ZERO, ZERO, ZERO]
    for c, (comp, cand) in zip(coeffs, slots):
        if not c.is_zero:
            comps[comp] = comps[comp] + c * cand
    return VectorExpr(*comps)


def homotopy_witness(target, kind):
    """Construct Theta with TotalGrad/TotalCurl/TotalDiv Theta = target.

    The corresponding exactness test must already hold identically; the
    result is re-verified before being returned.
    """
    if kind == "div":
        f = as_expr(target)
        _check_polynomial_class(f)
        if not is_total_div(f):
            raise WitnessUnavailable("target is not a total divergence")
        fjet, f0 = _split_coordinate_part(f)
        phi = _div_witness_jet(fjet)
        phi = VectorExpr(phi[0] + _coordinate_antiderivative(f0, "x1"),
                         phi[1], phi[2])
        if not (tdiv(phi) - f).is_zero:
            raise WitnessUnavailable("divergence witness failed verification")
        return phi
    if kind == "curl":
        F = target
        _check_polynomial_class(*F)
        if not is_total_curl(F):
            raise WitnessUnavailable("target is not a total curl")
        Fjet = []
        F0 = []
        for comp in F:
            a, b = _split_coordinate_part(comp)
            Fjet.append(a)
            F0.append(b)
        theta = _curl_witness_jet(VectorExpr(*Fjet)) if not VectorExpr(*Fjet).is_zero \
            else VZERO
        theta = theta + _radial_curl_potential(VectorExpr(*F0))
        if not (tcurl(theta) - VectorExpr(*F)).is_zero:
            raise WitnessUnavailable("curl witness failed verification")
        return theta
    if kind == "grad":
        F = target
        _check_polynomial_class(*F)
        if not is_total_grad(F):
            raise WitnessUnavailable("target is not a total gradient")
        Fjet = []
        F0 = []
        for comp in F:
            a, b = _split_coordinate_part(comp)
            Fjet.append(a)
            F0.append(b)
        theta = _grad_witness_jet(VectorExpr(*Fjet)) if not VectorExpr(*Fjet).is_zero \
            else ZERO
        theta = theta + _radial_grad_potential(VectorExpr(*F0))
        if not (tgrad(theta) - VectorExpr(*F)).is_zero:
            raise WitnessUnavailable("gradient witness failed verification")
        return theta
    raise ExprError("kind must be one of grad, curl, div")
