"""PDE systems in solved form, on-solutions reduction, and the built-in
registry of physical systems and exact solutions.

A system is stored as an ordered list of solved-form rules
``leading jet variable -> right-hand side`` such that no right-hand side
contains a leading derivative or a differential consequence of one.
Evaluation of an expression on the solution space substitutes these rules
(and their consequences, generated on demand) to a fixpoint, which is the
canonical representative of the expression modulo the system.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .expr import (
    Expr, VectorExpr, ZERO, ONE, OpaqueFunction, ExprError,
    as_expr, atom_of, coord, jet, jet_info, param, is_jet_atom, format_expr,
)
from .jetcalc import (
    total_dt, total_di, total_d_multi, tgrad, tdiv, tcurl, vector_total_dt,
)


class NotReducible(ExprError):
    pass


class Unsupported(ExprError):
    pass


T, X1, X2, X3 = coord("t"), coord("x1"), coord("x2"), coord("x3")
XVEC = VectorExpr(X1, X2, X3)


def vec(name):
    """Vector dependent as the jet variables (name1, name2, name3)."""
    return VectorExpr(jet(name + "1"), jet(name + "2"), jet(name + "3"))


def vcomponents(name):
    return [name + "1", name + "2", name + "3"]


def advect(u, w):
    """(u . grad) w for scalar or vector w."""
    if isinstance(w, VectorExpr):
        return VectorExpr(*[advect(u, c) for c in w])
    return u.dot(tgrad(w))


def laplacian(w):
    if isinstance(w, VectorExpr):
        return VectorExpr(*[laplacian(c) for c in w])
    return tdiv(tgrad(w))


def grad_matrix_quadratic(u):
    """sum_ij (d_i u_j)(d_j u_i), the source term of the pressure equation."""
    total = ZERO
    for i in range(1, 4):
        for j in range(1, 4):
            total = total + total_di(u[j - 1], i) * total_di(u[i - 1], j)
    return total


class PdeSystem:
    """A PDE system with a chosen set of leading derivatives."""

    def __init__(self, sid, description, dependents, equations, leading,
                 assumptions=(), parameters=(), functions=()):
        self.id = sid
        self.description = description
        self.dependents = tuple(dependents)      # scalar component names
        self.equations = tuple(equations)        # G^a, vanish on solutions
        self.leading = tuple(leading)            # ordered (jet Expr, rhs Expr)
        self.assumptions = tuple(assumptions)
        self.parameters = tuple(parameters)
        self.functions = tuple(functions)        # OpaqueFunction instances
        self.order = max((as_expr(g).jet_order() for g in equations), default=0)
        self._rules = []
        for lhs, rhs in self.leading:
            aid = atom_of(as_expr(lhs))
            if aid is None or not is_jet_atom(aid):
                raise ExprError("leading entries must be jet variables")
            dep, idx = jet_info(aid)
            if dep not in self.dependents:
                raise ExprError("leading derivative of unknown dependent %r" % dep)
            self._rules.append((dep, idx, as_expr(rhs)))
        self._consequences = {}
        self._reduce_memo = {}

    # -- reduction ----------------------------------------------------------

    def _rule_for(self, aid):
        dep, idx = jet_info(aid)
        for rdep, ridx, rhs in self._rules:
            if rdep != dep:
                continue
            need = list(idx)
            ok = True
            for c in ridx:
                if c in need:
                    need.remove(c)
                else:
                    ok = False
                    break
            if ok:
                return tuple(need), rhs
        return None

    def _consequence(self, aid):
        got = self._consequences.get(aid)
        if got is None:
            hit = self._rule_for(aid)
            if hit is None:
                return None
            extra, rhs = hit
            got = total_d_multi(rhs, extra)
            self._consequences[aid] = got
        return got

    def reduce(self, e):
        """Canonical representative of e on the solution space."""
        if isinstance(e, VectorExpr):
            return VectorExpr(*[self.reduce(c) for c in e])
        e = as_expr(e)
        cached = self._reduce_memo.get(e)
        if cached is not None:
            return cached
        orig = e
        guard = e.jet_order() + self.order + 8
        while True:
            sub = {}
            for aid in e.jet_atom_ids():
                r = self._consequence(aid)
                if r is not None:
                    sub[aid] = r
            if not sub:
                break
            e = e.subs_atoms(sub)
            guard -= 1
            if guard < 0:
                raise NotReducible(
                    "reduction did not reach a fixpoint on system %r" % self.id)
        if len(self._reduce_memo) < 4096:
            self._reduce_memo[orig] = e
        return e

    def vanishes_on_solutions(self, e):
        if isinstance(e, VectorExpr):
            return all(self.vanishes_on_solutions(c) for c in e)
        return self.reduce(e).is_zero

    def is_leading_free(self, e):
        if isinstance(e, VectorExpr):
            return all(self.is_leading_free(c) for c in e)
        return all(self._rule_for(a) is None for a in as_expr(e).jet_atom_ids())

    def check_consistency(self):
        """Every equation must reduce to the zero literal."""
        bad = []
        for g in self.equations:
            r = self.reduce(g)
            if not r.is_zero:
                bad.append(r)
        return bad

    def __repr__(self):
        return "<PdeSystem %s>" % self.id


def reduce_on_solutions(e, sys):
    return sys.reduce(e)


def vanishes_on_solutions(e, sys):
    return sys.vanishes_on_solutions(e)


# ---------------------------------------------------------------------------
# exact solutions

class ExactSolution:
    """Closed-form fields of a registered system, for numeric validation."""

    def __init__(self, sid, system_id, description, fields,
                 parameter_defaults=None, numeric_functions=None):
        self.id = sid
        self.system_id = system_id
        self.description = description
        self.fields = dict(fields)               # dependent -> Expr(t, x)
        self.parameter_defaults = dict(parameter_defaults or {})
        self.numeric_functions = dict(numeric_functions or {})

    def field_derivative(self, dep, idx):
        f = self.fields.get(dep)
        if f is None:
            raise Unsupported("solution %r lacks field %r" % (self.id, dep))
        return total_d_multi(f, idx)

    def closed_form(self, e):
        """Substitute the fields into e, yielding a coordinate expression."""
        if isinstance(e, VectorExpr):
            return VectorExpr(*[self.closed_form(c) for c in e])
        e = as_expr(e)
        sub = {}
        for aid in e.jet_atom_ids():
            dep, idx = jet_info(aid)
            sub[aid] = self.field_derivative(dep, idx)
        return e.subs_atoms(sub)

    def binding(self, t, x, extra=None):
        b = {coord("t"): t, X1: x[0], X2: x[1], X3: x[2]}
        for name, val in self.parameter_defaults.items():
            b[param(name)] = val
        for name, fn in self.numeric_functions.items():
            b[name] = fn
        if extra:
            b.update(extra)
        return b

    def eval_expr(self, e, t, x):
        return self.closed_form(e).eval(self.binding(t, x))


def verify_exact_solution(sol):
    """Substitute the fields into every equation; returns the residuals.

    All residuals must normalize to the zero literal for the solution to be
    admitted to the registry.
    """
    sys = system(sol.system_id)
    for dep in sys.dependents:
        if dep not in sol.fields:
            raise Unsupported("solution %r lacks field %r" % (sol.id, dep))
        if sol.fields[dep].jet_atom_ids():
            raise Unsupported("fields must be closed-form in coordinates")
    return [sol.closed_form(g) for g in sys.equations]


# ---------------------------------------------------------------------------
# registry

_SYSTEMS = {}
_SOLUTIONS = {}


def register_system(sys):
    bad = sys.check_consistency()
    if bad:
        raise ExprError("inconsistent solved forms for %r: %s"
                        % (sys.id, [format_expr(b) for b in bad]))
    _SYSTEMS[sys.id] = sys
    return sys


def register_solution(sol):
    residuals = verify_exact_solution(sol)
    bad = [r for r in residuals if not r.is_zero]
    if bad:
        raise ExprError("solution %r does not satisfy %r: %s"
                        % (sol.id, sol.system_id,
                           [format_expr(b) for b in bad]))
    _SOLUTIONS[sol.id] = sol
    return sol


def system(sid):
    if sid not in _SYSTEMS:
        raise KeyError("unknown system %r (known: %s)"
                       % (sid, ", ".join(sorted(_SYSTEMS))))
    return _SYSTEMS[sid]


def systems():
    return dict(_SYSTEMS)


def solution(sid):
    if sid not in _SOLUTIONS:
        raise KeyError("unknown solution %r (known: %s)"
                       % (sid, ", ".join(sorted(_SOLUTIONS))))
    return _SOLUTIONS[sid]


def solutions():
    return dict(_SOLUTIONS)


# ---------------------------------------------------------------------------
# shared constitutive functions

# barotropic pressure and the matching internal energy, e' = p / rho^2
p_eos = OpaqueFunction("p_eos", 1)
e_eos = OpaqueFunction("e_eos", 1,
                       partials=[lambda r: p_eos(r) / r ** 2])

# adiabatic gas: sound speed c(p, rho) and internal energy e(p, rho) with
# the thermodynamic closure e_p c^2 + e_rho = p / rho^2
c_sound = OpaqueFunction("c", 2)
e_gas = OpaqueFunction("e_gas", 2)
e_gas.partials[1] = lambda p, r: p / r ** 2 - c_sound(p, r) ** 2 * e_gas._derived_fn(0)(p, r)

# static electromagnetic sources: charge density and a current potential,
# so the current curl(Ksrc) is conserved by construction
q_src = OpaqueFunction("qsrc", 3)
K_src = tuple(OpaqueFunction("Ksrc%d" % i, 3) for i in (1, 2, 3))

# smooth time profile for unsteady exact solutions
A_fun = OpaqueFunction("A", 1)
cos_fun = OpaqueFunction("cos", 1, evaluator=math.cos)
sin_fun = OpaqueFunction("sin", 1, evaluator=math.sin)
cos_fun.partials[0] = lambda a: -sin_fun(a)
sin_fun.partials[0] = lambda a: cos_fun(a)


def source_current():
    K = VectorExpr(K_src[0](X1, X2, X3), K_src[1](X1, X2, X3), K_src[2](X1, X2, X3))
    return tcurl(K), K


# ---------------------------------------------------------------------------
# built-in systems

def _solve_in_order(rules, lhs, rhs):
    """Reduce rhs against the rules declared so far, then append the rule."""
    tmp = PdeSystem("_tmp", "", _deps_of(rules, lhs, rhs), (), rules)
    rules.append((lhs, tmp.reduce(rhs)))


def _deps_of(rules, lhs, rhs):
    deps = set()
    for l, r in rules + [(lhs, rhs)]:
        for e in (l, r):
            for aid in as_expr(e).jet_atom_ids():
                deps.add(jet_info(aid)[0])
    return sorted(deps)


def _build_gasdyn():
    rho, p = jet("rho"), jet("p")
    u = vec("u")
    c2 = c_sound(p, rho) ** 2
    mass = total_dt(rho) + tdiv(rho * u)
    pres = total_dt(p) + u.dot(tgrad(p)) + rho * c2 * tdiv(u)
    mom = vector_total_dt(u) + advect(u, u) + tgrad(p) / rho
    leading = [
        (jet("rho", ("t",)), -tdiv(rho * u)),
        (jet("p", ("t",)), -(u.dot(tgrad(p)) + rho * c2 * tdiv(u))),
        (jet("u1", ("t",)), -(advect(u, u)[0] + total_di(p, 1) / rho)),
        (jet("u2", ("t",)), -(advect(u, u)[1] + total_di(p, 2) / rho)),
        (jet("u3", ("t",)), -(advect(u, u)[2] + total_di(p, 3) / rho)),
    ]
    return PdeSystem(
        "gasdyn", "adiabatic gas dynamics with sound speed c(p,rho)",
        ["rho", "p"] + vcomponents("u"),
        [mass, pres] + list(mom),
        leading,
        assumptions=("rho > 0",),
        functions=(c_sound, e_gas))


def _incompressible_rules(u, p, rho_expr, extra_force=None):
    """Solved forms shared by the constant-density style systems."""
    rules = []
    _solve_in_order(rules, jet("u1", ("x1",)),
                    -(total_di(u[1], 2) + total_di(u[2], 3)))
    q = grad_matrix_quadratic(u)
    lap_rest = total_di(total_di(p, 2), 2) + total_di(total_di(p, 3), 3)
    rhs_p = -lap_rest - rho_expr * q
    if extra_force is not None:
        rhs_p = rhs_p + rho_expr * tdiv(extra_force)
    _solve_in_order(rules, jet("p", ("x1", "x1")), rhs_p)
    force = -advect(u, u) - tgrad(p) / rho_expr
    if extra_force is not None:
        force = force + extra_force
    for i, name in enumerate(vcomponents("u")):
        _solve_in_order(rules, jet(name, ("t",)), force[i])
    return rules


def _build_euler_constdens():
    u, p = vec("u"), jet("p")
    rho0 = param("rho0")
    rules = _incompressible_rules(u, p, rho0)
    eqs = [tdiv(u)]
    eqs += list(vector_total_dt(u) + advect(u, u) + tgrad(p) / rho0)
    eqs.append(tdiv(tgrad(p)) / rho0 + grad_matrix_quadratic(u))
    return PdeSystem(
        "euler-constdens", "constant-density ideal fluid flow",
        vcomponents("u") + ["p"], eqs, rules,
        assumptions=("rho0 > 0",), parameters=("rho0",))


def _build_euler_barotropic():
    rho = jet("rho")
    u = vec("u")
    gp = tgrad(p_eos(rho))
    mass = total_dt(rho) + tdiv(rho * u)
    mom = vector_total_dt(u) + advect(u, u) + gp / rho
    leading = [(jet("rho", ("t",)), -tdiv(rho * u))]
    force = -advect(u, u) - gp / rho
    for i, name in enumerate(vcomponents("u")):
        leading.append((jet(name, ("t",)), force[i]))
    return PdeSystem(
        "euler-barotropic", "barotropic ideal fluid flow, p = p(rho)",
        ["rho"] + vcomponents("u"),
        [mass] + list(mom), leading,
        assumptions=("rho > 0",), functions=(p_eos, e_eos))


def _build_euler_adiabatic():
    u, p, S = vec("u"), jet("p"), jet("S")
    rho0 = param("rho0")
    rules = _incompressible_rules(u, p, rho0)
    rules.append((jet("S", ("t",)), -u.dot(tgrad(S))))
    eqs = [tdiv(u)]
    eqs += list(vector_total_dt(u) + advect(u, u) + tgrad(p) / rho0)
    eqs.append(tdiv(tgrad(p)) / rho0 + grad_matrix_quadratic(u))
    eqs.append(total_dt(S) + u.dot(tgrad(S)))
    return PdeSystem(
        "euler-adiabatic",
        "constant-density ideal fluid with transported entropy",
        vcomponents("u") + ["p", "S"], eqs, rules,
        assumptions=("rho0 > 0",), parameters=("rho0",))


def _curl_free_rules(name):
    u = vec(name)
    return [
        (jet(name + "2", ("x1",)), total_di(u[0], 2)),
        (jet(name + "3", ("x1",)), total_di(u[0], 3)),
        (jet(name + "3", ("x2",)), total_di(u[1], 3)),
    ]


def _build_euler_equilibrium():
    rho = jet("rho")
    u = vec("u")
    rules = []
    for comp in vcomponents("u") + ["rho"]:
        rules.append((jet(comp, ("t",)), ZERO))
    for lhs, rhs in _curl_free_rules("u"):
        _solve_in_order(rules, lhs, rhs)
    dp = p_eos._derived_fn(0)(rho)
    for i in (1, 2, 3):
        half_speed = (u.dot(u)) / 2
        _solve_in_order(rules, jet("rho", ("x%d" % i,)),
                        -rho * total_di(half_speed, i) / dp)
    eqs = [total_dt(rho), total_dt(u[0]), total_dt(u[1]), total_dt(u[2])]
    eqs += list(tcurl(u))
    eqs += list(advect(u, u) + tgrad(p_eos(rho)) / rho)
    return PdeSystem(
        "euler-equilibrium",
        "steady irrotational barotropic flow (Bernoulli regime)",
        ["rho"] + vcomponents("u"), eqs, rules,
        assumptions=("rho > 0", "p_eos_d0 != 0"), functions=(p_eos, e_eos))


def _build_fluid_incompressible():
    rho, p = jet("rho"), jet("p")
    u = vec("u")
    rules = [(jet("rho", ("t",)), -u.dot(tgrad(rho)))]
    _solve_in_order(rules, jet("u1", ("x1",)),
                    -(total_di(u[1], 2) + total_di(u[2], 3)))
    q = grad_matrix_quadratic(u)
    lap_rest = total_di(total_di(p, 2), 2) + total_di(total_di(p, 3), 3)
    _solve_in_order(rules, jet("p", ("x1", "x1")),
                    -lap_rest + tgrad(rho).dot(tgrad(p)) / rho - rho * q)
    force = -advect(u, u) - tgrad(p) / rho
    for i, name in enumerate(vcomponents("u")):
        _solve_in_order(rules, jet(name, ("t",)), force[i])
    eqs = [total_dt(rho) + u.dot(tgrad(rho)), tdiv(u)]
    eqs += list(vector_total_dt(u) + advect(u, u) + tgrad(p) / rho)
    eqs.append(tdiv(tgrad(p) / rho) + q)
    return PdeSystem(
        "fluid-incompressible", "incompressible ideal fluid flow",
        ["rho"] + vcomponents("u") + ["p"], eqs, rules,
        assumptions=("rho > 0",))


def _build_irrotational_fluid():
    u, p = vec("u"), jet("p")
    rho0 = param("rho0")
    rules = []
    for lhs, rhs in _curl_free_rules("u"):
        rules.append((lhs, rhs))
    _solve_in_order(rules, jet("u1", ("x1",)),
                    -(total_di(u[1], 2) + total_di(u[2], 3)))
    q = grad_matrix_quadratic(u)
    lap_rest = total_di(total_di(p, 2), 2) + total_di(total_di(p, 3), 3)
    _solve_in_order(rules, jet("p", ("x1", "x1")), -lap_rest - rho0 * q)
    force = -advect(u, u) - tgrad(p) / rho0
    for i, name in enumerate(vcomponents("u")):
        _solve_in_order(rules, jet(name, ("t",)), force[i])
    eqs = list(tcurl(u)) + [tdiv(u)]
    eqs += list(vector_total_dt(u) + advect(u, u) + tgrad(p) / rho0)
    eqs.append(tdiv(tgrad(p)) / rho0 + q)
    return PdeSystem(
        "irrotational-fluid",
        "irrotational constant-density ideal fluid flow",
        vcomponents("u") + ["p"], eqs, rules,
        assumptions=("rho0 > 0",), parameters=("rho0",))


def _build_irrotational_adiabatic():
    sys0 = _build_irrotational_fluid()
    u, S = vec("u"), jet("S")
    rules = list(sys0.leading)
    rules.append((jet("S", ("t",)), -u.dot(tgrad(S))))
    eqs = list(sys0.equations) + [total_dt(S) + u.dot(tgrad(S))]
    return PdeSystem(
        "irrotational-adiabatic",
        "irrotational constant-density flow with transported entropy",
        vcomponents("u") + ["p", "S"], eqs, rules,
        assumptions=("rho0 > 0",), parameters=("rho0",))


def _maxwell_rules(E, B, source_J, source_q):
    cl = param("c")
    fourpi = 4 * param("pi")
    rules = []
    rhsE = cl * tcurl(B) - fourpi * source_J
    for i, name in enumerate(vcomponents("E")):
        rules.append((jet(name, ("t",)), rhsE[i]))
    rhsB = -cl * tcurl(E)
    for i, name in enumerate(vcomponents("B")):
        rules.append((jet(name, ("t",)), rhsB[i]))
    rules.append((jet("E1", ("x1",)),
                  fourpi * source_q - total_di(E[1], 2) - total_di(E[2], 3)))
    rules.append((jet("B1", ("x1",)),
                  -total_di(B[1], 2) - total_di(B[2], 3)))
    return rules


def _build_em():
    E, B = vec("E"), vec("B")
    cl = param("c")
    fourpi = 4 * param("pi")
    J, _ = source_current()
    q = q_src(X1, X2, X3)
    rules = _maxwell_rules(E, B, J, q)
    eqs = list(vector_total_dt(E) - cl * tcurl(B) + fourpi * J)
    eqs += list(vector_total_dt(B) + cl * tcurl(E))
    eqs.append(tdiv(E) - fourpi * q)
    eqs.append(tdiv(B))
    return PdeSystem(
        "em", "Maxwell equations with static conserved sources",
        vcomponents("E") + vcomponents("B"), eqs, rules,
        assumptions=("c > 0",), parameters=("c", "pi"),
        functions=(q_src,) + K_src)


def _build_em_vacuum():
    E, B = vec("E"), vec("B")
    cl = param("c")
    rules = _maxwell_rules(E, B, VectorExpr(ZERO, ZERO, ZERO), ZERO)
    eqs = list(vector_total_dt(E) - cl * tcurl(B))
    eqs += list(vector_total_dt(B) + cl * tcurl(E))
    eqs.append(tdiv(E))
    eqs.append(tdiv(B))
    return PdeSystem(
        "em-vacuum", "Maxwell equations in vacuum",
        vcomponents("E") + vcomponents("B"), eqs, rules,
        assumptions=("c > 0",), parameters=("c",))


def _build_electrostatics():
    E = vec("E")
    fourpi = 4 * param("pi")
    q = q_src(X1, X2, X3)
    rules = [(jet(name, ("t",)), ZERO) for name in vcomponents("E")]
    for lhs, rhs in _curl_free_rules("E"):
        rules.append((lhs, rhs))
    rules.append((jet("E1", ("x1",)),
                  fourpi * q - total_di(E[1], 2) - total_di(E[2], 3)))
    eqs = [total_dt(c) for c in E]
    eqs += list(tcurl(E))
    eqs.append(tdiv(E) - fourpi * q)
    return PdeSystem(
        "electrostatics", "static curl-free electric field",
        vcomponents("E"), eqs, rules,
        parameters=("pi",), functions=(q_src,))


def _build_magnetostatics():
    B = vec("B")
    rules = [(jet(name, ("t",)), ZERO) for name in vcomponents("B")]
    for lhs, rhs in _curl_free_rules("B"):
        rules.append((lhs, rhs))
    rules.append((jet("B1", ("x1",)),
                  -total_di(B[1], 2) - total_di(B[2], 3)))
    eqs = [total_dt(c) for c in B]
    eqs += list(tcurl(B))
    eqs.append(tdiv(B))
    return PdeSystem(
        "magnetostatics", "current-free magnetostatic field",
        vcomponents("B"), eqs, rules)


def _mhd_force(rho, u, B, viscous):
    mu0 = param("mu0")
    force = -advect(u, u) - tgrad(p_eos(rho)) / rho \
        + tcurl(B).cross(B) / (mu0 * rho)
    if viscous:
        force = force + param("mu") * laplacian(u) / rho
    return force


def _build_mhd(ideal=False):
    rho = jet("rho")
    u, B = vec("u"), vec("B")
    mu0, eta = param("mu0"), param("eta")
    rules = [(jet("rho", ("t",)), -tdiv(rho * u))]
    force = _mhd_force(rho, u, B, viscous=not ideal)
    for i, name in enumerate(vcomponents("u")):
        rules.append((jet(name, ("t",)), force[i]))
    ind_flux = u.cross(B)
    if not ideal:
        ind_flux = ind_flux - (eta / mu0) * tcurl(B)
    rhsB = tcurl(ind_flux)
    for i, name in enumerate(vcomponents("B")):
        rules.append((jet(name, ("t",)), rhsB[i]))
    rules.append((jet("B1", ("x1",)),
                  -total_di(B[1], 2) - total_di(B[2], 3)))
    eqs = [total_dt(rho) + tdiv(rho * u)]
    eqs += list(vector_total_dt(u) - force)
    eqs += list(vector_total_dt(B) - rhsB)
    eqs.append(tdiv(B))
    sid = "mhd-ideal" if ideal else "mhd"
    desc = ("ideal inviscid barotropic magnetohydrodynamics" if ideal
            else "resistive viscous barotropic magnetohydrodynamics")
    params = ("mu0",) if ideal else ("mu0", "mu", "eta")
    return PdeSystem(
        sid, desc, ["rho"] + vcomponents("u") + vcomponents("B"),
        eqs, rules,
        assumptions=("rho > 0", "mu0 > 0"),
        parameters=params, functions=(p_eos, e_eos))


def _build_mhd_incompressible():
    rho, p = jet("rho"), jet("p")
    u, B = vec("u"), vec("B")
    mu0, eta = param("mu0"), param("eta")
    lorentz = tcurl(B).cross(B) / (mu0 * rho)
    rules = [(jet("rho", ("t",)), -u.dot(tgrad(rho)))]
    _solve_in_order(rules, jet("u1", ("x1",)),
                    -(total_di(u[1], 2) + total_di(u[2], 3)))
    _solve_in_order(rules, jet("B1", ("x1",)),
                    -(total_di(B[1], 2) + total_di(B[2], 3)))
    q = grad_matrix_quadratic(u)
    lap_rest = total_di(total_di(p, 2), 2) + total_di(total_di(p, 3), 3)
    _solve_in_order(rules, jet("p", ("x1", "x1")),
                    -lap_rest + tgrad(rho).dot(tgrad(p)) / rho
                    - rho * q + rho * tdiv(lorentz))
    force = -advect(u, u) - tgrad(p) / rho + lorentz
    for i, name in enumerate(vcomponents("u")):
        _solve_in_order(rules, jet(name, ("t",)), force[i])
    rhsB = tcurl(u.cross(B) - (eta / mu0) * tcurl(B))
    for i, name in enumerate(vcomponents("B")):
        _solve_in_order(rules, jet(name, ("t",)), rhsB[i])
    eqs = [total_dt(rho) + u.dot(tgrad(rho)), tdiv(u)]
    eqs += list(vector_total_dt(u) + advect(u, u) + tgrad(p) / rho - lorentz)
    eqs += list(vector_total_dt(B) - rhsB)
    eqs.append(tdiv(B))
    eqs.append(tdiv(tgrad(p) / rho) + q - tdiv(lorentz))
    return PdeSystem(
        "mhd-incompressible", "incompressible inviscid resistive MHD",
        ["rho"] + vcomponents("u") + ["p"] + vcomponents("B"), eqs, rules,
        assumptions=("rho > 0", "mu0 > 0"),
        parameters=("mu0", "eta"))


def _build_mhd_equilibrium():
    u, B = vec("u"), vec("B")
    W = u.cross(B)
    rules = [(jet(name, ("t",)), ZERO)
             for name in vcomponents("u") + vcomponents("B")]
    rules.append((jet("u1", ("x1",)),
                  -(total_di(u[1], 2) + total_di(u[2], 3))))
    rules.append((jet("B1", ("x1",)),
                  -(total_di(B[1], 2) + total_di(B[2], 3))))
    curlW = tcurl(W)
    # solve curl(u x B) = 0 for u1_x2, u2_x1, u3_x1 in turn
    b1, b2 = B[0], B[1]

    def isolate(comp_expr, target):
        taid = atom_of(target)
        coeff = comp_expr.diff_atom(taid)
        rest = comp_expr - coeff * target
        return -rest / coeff

    _solve_in_order(rules, jet("u1", ("x2",)), isolate(curlW[0], jet("u1", ("x2",))))
    _solve_in_order(rules, jet("u2", ("x1",)), isolate(curlW[1], jet("u2", ("x1",))))
    _solve_in_order(rules, jet("u3", ("x1",)), isolate(curlW[2], jet("u3", ("x1",))))
    eqs = [total_dt(c) for c in u] + [total_dt(c) for c in B]
    eqs += [tdiv(u), tdiv(B)]
    eqs += list(curlW)
    return PdeSystem(
        "mhd-equilibrium", "static ideal MHD equilibrium, curl(u x B) = 0",
        vcomponents("u") + vcomponents("B"), eqs, rules,
        assumptions=("B1 != 0", "B2 != 0"))


def _register_builtin_systems():
    register_system(_build_gasdyn())
    register_system(_build_euler_constdens())
    register_system(_build_euler_barotropic())
    register_system(_build_euler_adiabatic())
    register_system(_build_euler_equilibrium())
    register_system(_build_fluid_incompressible())
    register_system(_build_irrotational_fluid())
    register_system(_build_irrotational_adiabatic())
    register_system(_build_em())
    register_system(_build_em_vacuum())
    register_system(_build_electrostatics())
    register_system(_build_magnetostatics())
    register_system(_build_mhd(ideal=False))
    register_system(_build_mhd(ideal=True))
    register_system(_build_mhd_incompressible())
    register_system(_build_mhd_equilibrium())


# ---------------------------------------------------------------------------
# built-in exact solutions

def _register_builtin_solutions():
    E0, k, cl = param("E0"), param("k"), param("c")
    phase = k * X1 - cl * k * T
    wave = E0 * cos_fun(phase)
    register_solution(ExactSolution(
        "em-planewave", "em-vacuum",
        "linearly polarized plane wave along x1",
        {"E1": ZERO, "E2": wave, "E3": ZERO,
         "B1": ZERO, "B2": ZERO, "B3": wave},
        parameter_defaults={"E0": 1.0, "k": 1.0, "c": 1.0},
        numeric_functions={"cos": math.cos, "sin": math.sin}))

    Om, rho0 = param("Omega"), param("rho0")
    register_solution(ExactSolution(
        "rigid-rotation", "euler-constdens",
        "steady rigid rotation about the x3 axis",
        {"u1": -Om * X2, "u2": Om * X1, "u3": ZERO,
         "p": rho0 * Om ** 2 * (X1 ** 2 + X2 ** 2) / 2},
        parameter_defaults={"Omega": 1.0, "rho0": 1.0}))

    aa = A_fun(T)
    ap = A_fun._derived_fn(0)(T)
    register_solution(ExactSolution(
        "potential-flow", "irrotational-fluid",
        "unsteady potential flow with stream potential A(t)*x1*x2",
        {"u1": aa * X2, "u2": aa * X1, "u3": ZERO,
         "p": -rho0 * (ap * X1 * X2 + aa ** 2 * (X1 ** 2 + X2 ** 2) / 2)},
        parameter_defaults={"rho0": 1.0},
        numeric_functions={"A": lambda tt: 1.0 + 0.5 * tt,
                           "A_d0": lambda tt: 0.5}))


_register_builtin_systems()
_register_builtin_solutions()
