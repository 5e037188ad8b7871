"""Registry of the physical conserved currents shipped with the toolkit.

Every entry is admitted only if its defining residual reduces to the zero
literal on its system; the test suite re-checks this for the whole registry.
"""
from __future__ import annotations

from .expr import Expr, VectorExpr, ZERO, VZERO, jet, param, coord, unit_vector
from .jetcalc import tgrad, tdiv, tcurl
from .sysdef import (
    vec, p_eos, e_eos, c_sound, e_gas, K_src, X1, X2, X3,
)
from .laws import (
    ConservedCurrent, VOLUMETRIC, SURFACE_FLUX, CIRCULATORY,
    SPATIAL_DIV, SPATIAL_CURL, SPATIAL_GRAD,
)

_CURRENTS = {}


def register_current(c):
    _CURRENTS[(c.system_id, c.id)] = c
    return c


def current(system_id, cid):
    key = (system_id, cid)
    if key not in _CURRENTS:
        raise KeyError("unknown current %r on %r" % (cid, system_id))
    return _CURRENTS[key]


def currents():
    return dict(_CURRENTS)


def currents_on(system_id):
    return {cid: c for (sid, cid), c in _CURRENTS.items() if sid == system_id}


def _register_all():
    rho, p, S = jet("rho"), jet("p"), jet("S")
    u, B, E = vec("u"), vec("B"), vec("E")
    rho0, mu0, mu, eta = (param(n) for n in ("rho0", "mu0", "mu", "eta"))
    cl, pi = param("c"), param("pi")
    omega = tcurl(u)
    axes = "xyz"

    # -- gas dynamics --------------------------------------------------------
    register_current(ConservedCurrent(
        "mass", VOLUMETRIC, "gasdyn", density=rho, flux=rho * u,
        description="mass continuity"))
    for i in range(3):
        xi = unit_vector(i)
        register_current(ConservedCurrent(
            "momentum-" + axes[i], VOLUMETRIC, "gasdyn",
            density=rho * u[i], flux=rho * u[i] * u + p * xi,
            description="linear momentum along " + axes[i]))
    e_int = e_gas(p, rho)
    register_current(ConservedCurrent(
        "energy", VOLUMETRIC, "gasdyn",
        density=rho * (u.dot(u) / 2 + e_int),
        flux=(rho * (u.dot(u) / 2 + e_int) + p) * u,
        description="total energy with internal energy e_gas(p,rho)"))

    # -- barotropic ideal fluid ---------------------------------------------
    eb = e_eos(rho)
    pb = p_eos(rho)
    enth = u.dot(u) / 2 + eb + pb / rho
    register_current(ConservedCurrent(
        "mass", VOLUMETRIC, "euler-barotropic", density=rho, flux=rho * u,
        description="mass continuity"))
    for i in range(3):
        xi = unit_vector(i)
        register_current(ConservedCurrent(
            "momentum-" + axes[i], VOLUMETRIC, "euler-barotropic",
            density=rho * u[i], flux=rho * u[i] * u + pb * xi,
            description="linear momentum along " + axes[i]))
    register_current(ConservedCurrent(
        "energy", VOLUMETRIC, "euler-barotropic",
        density=rho * (u.dot(u) / 2 + eb),
        flux=(rho * (u.dot(u) / 2 + eb) + pb) * u,
        description="total energy, e_eos' = p_eos/rho^2"))
    register_current(ConservedCurrent(
        "helicity", VOLUMETRIC, "euler-barotropic",
        density=u.dot(omega),
        flux=enth * omega + omega.cross(u).cross(u),
        description="fluid helicity; flux carries the full Bernoulli head"))
    register_current(ConservedCurrent(
        "vorticity-transport", SURFACE_FLUX, "euler-barotropic",
        density=omega, flux=omega.cross(u),
        description="vorticity transport (curl of the velocity equation)"))
    register_current(ConservedCurrent(
        "div-vorticity", SPATIAL_DIV, "euler-barotropic", flux=omega,
        description="div of vorticity vanishes identically"))

    # -- constant-density ideal fluid ---------------------------------------
    register_current(ConservedCurrent(
        "energy", VOLUMETRIC, "euler-constdens",
        density=rho0 * u.dot(u) / 2,
        flux=(rho0 * u.dot(u) / 2 + p) * u,
        description="kinetic energy of constant-density flow"))
    register_current(ConservedCurrent(
        "helicity", VOLUMETRIC, "euler-constdens",
        density=u.dot(omega),
        flux=(u.dot(u) / 2 + p / rho0) * omega + omega.cross(u).cross(u),
        description="fluid helicity for constant-density flow"))

    # -- incompressible ideal fluid (variable density) -----------------------
    register_current(ConservedCurrent(
        "mass", VOLUMETRIC, "fluid-incompressible",
        density=rho, flux=rho * u, description="mass continuity"))
    register_current(ConservedCurrent(
        "density-gradient", CIRCULATORY, "fluid-incompressible",
        density=tgrad(rho), flux=u.dot(tgrad(rho)),
        description="gradient of the density transport equation"))
    register_current(ConservedCurrent(
        "streamline-flux", SPATIAL_DIV, "fluid-incompressible", flux=u,
        description="incompressibility as a divergence law"))
    register_current(ConservedCurrent(
        "pressure-gradient-flux", SPATIAL_DIV, "fluid-incompressible",
        flux=tgrad(p) / rho + VectorExpr(*[u.dot(tgrad(u[i]))
                                           for i in range(3)]),
        description="pressure compatibility law; the flux equals -u_t "
                    "on solutions"))

    # -- constant-density adiabatic fluid ------------------------------------
    register_current(ConservedCurrent(
        "entropy", VOLUMETRIC, "euler-adiabatic",
        density=S, flux=S * u,
        description="transported entropy in incompressible flow"))
    register_current(ConservedCurrent(
        "entropy-gradient", CIRCULATORY, "euler-adiabatic",
        density=tgrad(S), flux=u.dot(tgrad(S)),
        description="gradient of the entropy transport equation"))
    register_current(ConservedCurrent(
        "ertel", VOLUMETRIC, "euler-adiabatic",
        density=omega.dot(tgrad(S)),
        flux=omega.dot(tgrad(S)) * u,
        description="potential-vorticity density w.grad S transported "
                    "by the flow"))

    # -- irrotational fluid ---------------------------------------------------
    register_current(ConservedCurrent(
        "circulation", CIRCULATORY, "irrotational-fluid",
        density=u, flux=u.dot(u) / 2 + p / rho0,
        description="velocity circulation with Bernoulli endpoint flow"))
    register_current(ConservedCurrent(
        "curl-u", SPATIAL_CURL, "irrotational-fluid", flux=u,
        description="irrotationality as a curl law"))
    register_current(ConservedCurrent(
        "streamline-flux", SPATIAL_DIV, "irrotational-fluid", flux=u,
        description="incompressibility as a divergence law"))

    register_current(ConservedCurrent(
        "entropy-cross", SURFACE_FLUX, "irrotational-adiabatic",
        density=u.cross(tgrad(S)),
        flux=(u.dot(u) / 2 + p / rho0) * tgrad(S) - u.dot(tgrad(S)) * u,
        description="cross product of the velocity equation with grad S"))

    # -- steady irrotational barotropic flow ---------------------------------
    register_current(ConservedCurrent(
        "bernoulli", SPATIAL_GRAD, "euler-equilibrium",
        flux=u.dot(u) / 2 + e_eos(rho) + p_eos(rho) / rho,
        description="Bernoulli head is spatially constant in steady "
                    "irrotational flow"))

    # -- electromagnetism -----------------------------------------------------
    fourpi = 4 * pi
    register_current(ConservedCurrent(
        "faraday", SURFACE_FLUX, "em", density=B, flux=cl * E,
        description="magnetic induction (Faraday's law)"))
    Kv = VectorExpr(K_src[0](X1, X2, X3), K_src[1](X1, X2, X3),
                    K_src[2](X1, X2, X3))
    register_current(ConservedCurrent(
        "efield-flux", SURFACE_FLUX, "em",
        density=E, flux=fourpi * Kv - cl * B,
        description="electric flux transport for the static source current "
                    "curl(Ksrc)"))
    E_t = VectorExpr(jet("E1", ("t",)), jet("E2", ("t",)), jet("E3", ("t",)))
    register_current(ConservedCurrent(
        "charge-current", VOLUMETRIC, "em",
        density=tdiv(E) / fourpi,
        flux=(cl / fourpi) * tcurl(B) - E_t / fourpi,
        description="charge-current continuity with the current rewritten "
                    "through the fields"))
    register_current(ConservedCurrent(
        "div-B", SPATIAL_DIV, "em", flux=B,
        description="absence of magnetic charges"))

    register_current(ConservedCurrent(
        "energy", VOLUMETRIC, "em-vacuum",
        density=(E.dot(E) + B.dot(B)) / 2, flux=cl * E.cross(B),
        description="electromagnetic field energy with Poynting flux"))
    for i in range(3):
        xi = unit_vector(i)
        register_current(ConservedCurrent(
            "momentum-" + axes[i], VOLUMETRIC, "em-vacuum",
            density=xi.dot(E.cross(B)) / cl,
            flux=(E.dot(E) + B.dot(B)) / 2 * xi
            - xi.dot(E) * E - xi.dot(B) * B,
            description="field momentum along " + axes[i]
            + " (negated Maxwell stress as the flux)"))
    register_current(ConservedCurrent(
        "displacement", SURFACE_FLUX, "em-vacuum",
        density=E, flux=-cl * B,
        description="electric displacement current"))
    register_current(ConservedCurrent(
        "faraday", SURFACE_FLUX, "em-vacuum", density=B, flux=cl * E,
        description="magnetic induction (Faraday's law)"))
    register_current(ConservedCurrent(
        "div-B", SPATIAL_DIV, "em-vacuum", flux=B,
        description="absence of magnetic charges"))
    register_current(ConservedCurrent(
        "div-E", SPATIAL_DIV, "em-vacuum", flux=E,
        description="absence of electric charges in vacuum"))

    register_current(ConservedCurrent(
        "electric-circulation", SPATIAL_CURL, "electrostatics", flux=E,
        description="static electric field is curl-free"))
    register_current(ConservedCurrent(
        "magnetic-circulation", SPATIAL_CURL, "magnetostatics", flux=B,
        description="current-free magnetostatic field is curl-free"))

    # -- magnetohydrodynamics -------------------------------------------------
    register_current(ConservedCurrent(
        "mass", VOLUMETRIC, "mhd", density=rho, flux=rho * u,
        description="mass continuity"))
    for i in range(3):
        xi = unit_vector(i)
        register_current(ConservedCurrent(
            "momentum-" + axes[i], VOLUMETRIC, "mhd",
            density=rho * u[i],
            flux=rho * u[i] * u - B[i] * B / mu0
            + (p_eos(rho) + B.dot(B) / (2 * mu0)) * xi
            - mu * tgrad(u[i]),
            description="momentum along " + axes[i]
            + " with magnetic and viscous stresses"))
    register_current(ConservedCurrent(
        "induction", SURFACE_FLUX, "mhd",
        density=B, flux=B.cross(u) + (eta / mu0) * tcurl(B),
        description="magnetic induction with resistive flux"))
    register_current(ConservedCurrent(
        "div-B", SPATIAL_DIV, "mhd", flux=B,
        description="absence of magnetic charges"))

    enth_b = u.dot(u) / 2 + e_eos(rho) + p_eos(rho) / rho
    register_current(ConservedCurrent(
        "energy", VOLUMETRIC, "mhd-ideal",
        density=rho * (u.dot(u) / 2 + e_eos(rho)) + B.dot(B) / (2 * mu0),
        flux=(rho * (u.dot(u) / 2 + e_eos(rho)) + p_eos(rho)) * u
        - u.cross(B).cross(B) / mu0,
        description="total energy of ideal inviscid MHD"))
    register_current(ConservedCurrent(
        "cross-helicity", VOLUMETRIC, "mhd-ideal",
        density=u.dot(B),
        flux=enth_b * B - u.cross(B).cross(u),
        description="cross-helicity of ideal inviscid MHD"))
    register_current(ConservedCurrent(
        "induction", SURFACE_FLUX, "mhd-ideal",
        density=B, flux=B.cross(u),
        description="ideal magnetic induction"))
    register_current(ConservedCurrent(
        "div-B", SPATIAL_DIV, "mhd-ideal", flux=B,
        description="absence of magnetic charges"))

    register_current(ConservedCurrent(
        "streamline-flux", SPATIAL_DIV, "mhd-incompressible", flux=u,
        description="incompressibility as a divergence law"))
    register_current(ConservedCurrent(
        "pressure-gradient-flux", SPATIAL_DIV, "mhd-incompressible",
        flux=tgrad(p) / rho
        + VectorExpr(*[u.dot(tgrad(u[i])) for i in range(3)])
        - tcurl(B).cross(B) / (mu0 * rho),
        description="pressure compatibility law of incompressible MHD"))
    register_current(ConservedCurrent(
        "div-B", SPATIAL_DIV, "mhd-incompressible", flux=B,
        description="absence of magnetic charges"))

    register_current(ConservedCurrent(
        "em-circulation", SPATIAL_CURL, "mhd-equilibrium",
        flux=u.cross(B),
        description="static electric field -u x B is curl-free in "
                    "equilibrium"))


_register_all()
