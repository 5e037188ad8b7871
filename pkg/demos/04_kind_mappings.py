"""Mapping conservation laws between kinds with a coordinate vector field.

Dotting a circulatory law with a divergence-free xi(x) gives a volumetric
law, dotting a surface-flux law with a curl-free xi gives a volumetric law,
and crossing a circulatory law with a curl-free xi gives a surface-flux
law.  The mappings preserve local triviality when the source density is
exact on solutions.
"""
from conslaw import catalog
from conslaw.dsl import print_entity
from conslaw.expr import ZERO, coord
from conslaw.laws import classify, verify_local
from conslaw.mappings import (
    MappingVector, map_current, check_triviality_preservation,
    CONSTANT_FRAME, DIVERGENCE_FREE,
)

x1, x2 = coord("x1"), coord("x2")

circ = catalog.current("irrotational-fluid", "circulation")
img = map_current(circ, CONSTANT_FRAME[2], "surface-flux")
print("circulation current crossed with k:")
print(print_entity(img))
print("verifies:", verify_local(img).is_zero)
v = classify(img)
print("classification:", v.status)
print("witness theta:", v.witness.get("theta"))
print()

# a non-constant admissible field
xi = MappingVector([-x2, x1, ZERO], DIVERGENCE_FREE, name="swirl")
img2 = map_current(circ, xi, "volumetric")
print("circulation dotted with the swirl field:")
print(print_entity(img2))
print("verifies:", verify_local(img2).is_zero)
print()

for sid, cid in [("fluid-incompressible", "density-gradient"),
                 ("em", "faraday"),
                 ("em", "efield-flux")]:
    rep = check_triviality_preservation(catalog.current(sid, cid))
    print("%s/%s: density exact on solutions: %s" % (sid, cid,
                                                     rep.freeness or "no"))
    for name, target, status in rep.entries:
        print("   xi=%s -> %-13s %s" % (name, target, status))
    if rep.converse:
        print("   non-trivial image search:", rep.converse)
    for n in rep.notes:
        print("   note:", n)
    print()
