"""Verify every registered conservation law on its PDE system.

A law holds exactly when the reduced residual of its defining combination
(D_t density + Div/Curl/Grad flux, or the purely spatial analog) is the
zero literal; reduction substitutes the system's solved forms and their
differential consequences to a fixpoint.
"""
from conslaw import catalog
from conslaw.laws import verify_local
from conslaw.sysdef import systems

print("registered systems:")
for sid, sys in sorted(systems().items()):
    print("  %-24s %s" % (sid, sys.description))

print()
print("catalog verification:")
total = 0
for (sid, cid), c in sorted(catalog.currents().items()):
    residual = verify_local(c)
    status = "PASS" if residual.is_zero else "FAIL"
    total += 1
    print("  %-4s %-24s %-24s %s" % (status, sid, cid, c.kind))
print("%d currents checked" % total)
