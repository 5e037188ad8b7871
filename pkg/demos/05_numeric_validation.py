"""Numeric validation of global conservation laws by quadrature.

Each registered exact solution has been admitted with symbolically zero
residuals, so quadrature residuals of the global balance laws measure pure
discretization error and shrink under refinement.
"""
import math

from conslaw import catalog
from conslaw.sysdef import solution, vec
from conslaw.numgrid import (
    Box, Circle, Segment, QuadratureSpec,
    integrate, balance_residual, topological_residual, refine_and_certify,
    gauss_consistency,
)

box = Box((0, 0, 0), (1, 1, 1))
wave = solution("em-planewave")
energy = catalog.current("em-vacuum", "energy")

print("== plane-wave field energy over the unit box ==")
for t in (0.0, 0.3, 0.7):
    rep = refine_and_certify(lambda q: balance_residual(energy, box, wave, t, q))
    print("t=%.1f  C=%.9f  dC/dt=%+.9f  net flux=%+.9f  "
          "relative residual=%.2e" % (t, rep.value_C, rep.dCdt,
                                      rep.value_F, rep.relative_residual))
    print("   refinement:", "; ".join("n=%d -> %.1e" % (n, abs(r))
                                      for n, r, _ in rep.refinement_table))

print()
print("== closed-surface magnetic flux (topological) ==")
rep = topological_residual(catalog.current("em-vacuum", "div-B"),
                           box.boundary(), wave, 0.3)
print("flux through the box boundary: %.2e" % rep.value_C)

print()
print("== circulation around a fixed closed curve ==")
pf = solution("potential-flow")
circle = Circle((0, 0, 0), 1.0, "xy")
crep = balance_residual(catalog.current("irrotational-fluid", "circulation"),
                        circle, pf, 0.2)
print("potential flow: circulation=%.2e  d/dt=%.2e"
      % (crep.value_C, crep.dCdt))

rot = solution("rigid-rotation")
val = integrate(vec("u"), circle, rot, 0.0)
print("rigid rotation (negative control): circulation=%.9f vs 2*pi=%.9f"
      % (val, 2 * math.pi))

print()
print("== open-curve balance with endpoint flow ==")
seg = Segment((0, 0, 0), (1, 1, 0))
srep = balance_residual(catalog.current("irrotational-fluid", "circulation"),
                        seg, pf, 0.1)
print("segment: dC/dt=%+.9f endpoint flow=%+.9f residual=%.2e"
      % (srep.dCdt, srep.value_F, abs(srep.residual)))

print()
print("== quadrature consistency with the divergence theorem ==")
from conslaw.expr import VectorExpr, coord
x1, x2, x3 = coord("x1"), coord("x2"), coord("x3")
F = VectorExpr(x1 * x2, x2 * x3, x3 * x1)
d, lhs, rhs = gauss_consistency(F, Box((0, -0.5, 0.25), (1.25, 0.5, 1.0)))
print("surface flux %.12f vs volume integral %.12f (diff %.1e)"
      % (lhs, rhs, d))
