"""Triviality classification with witnesses, certificates, and boundary
constants of motion.

A trivial verdict always carries a witness pair that re-substitutes to a
zero residual; a non-trivial verdict carries a checkable certificate
(nonzero curl/divergence of the density on solutions, a nonzero spatial
Euler derivative, or an order obstruction after the bounded witness search
is exhausted).  Type IIb witnesses with a time-independent boundary
integrand induce constants of motion on closed boundaries.
"""
from conslaw import catalog
from conslaw.expr import format_expr
from conslaw.laws import classify, verify_local, boundary_constant_of_motion


def show(sid, cid):
    c = catalog.current(sid, cid)
    v = classify(c)
    print("%s/%s (%s): %s" % (sid, cid, c.kind, v.status))
    for key, val in v.witness.items():
        if val is not None:
            print("   %s = %s" % (key, val))
    if v.certificate:
        print("   certificate:", v.certificate[0])
    if v.boundary_law is not None:
        print("   boundary law: %s on closed domains, density %s"
              % (v.boundary_law.kind, v.boundary_law.density))
    for d in v.diagnostics:
        print("   note:", d)
    print()


# dynamical laws that genuinely constrain solutions
show("gasdyn", "mass")
show("euler-constdens", "helicity")
show("mhd-ideal", "cross-helicity")

# locally trivial laws and their witnesses
show("em", "charge-current")
show("euler-adiabatic", "ertel")
show("euler-barotropic", "vorticity-transport")

# time-independent constraint laws and their boundary content
show("em", "div-B")
for sid, cid in [("mhd", "div-B"),
                 ("fluid-incompressible", "streamline-flux"),
                 ("irrotational-fluid", "curl-u")]:
    law = boundary_constant_of_motion(catalog.current(sid, cid))
    print("constraint %s/%s induces a %s constant of motion on closed "
          "domains; density %s; temporal residual zero: %s"
          % (sid, cid, law.kind, law.density,
             verify_local(law).is_zero))
