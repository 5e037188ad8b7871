"""A tour of the expression core and the jet-space calculus.

Expressions live in a canonical rational normal form, so deciding whether a
differential function vanishes identically is a structural check.  Total
derivatives, the total vector-calculus operators, and the Euler operators
are built on top of that.
"""
from conslaw.expr import Expr, VectorExpr, coord, jet, param, format_expr
from conslaw.jetcalc import (
    total_dt, total_di, tgrad, tdiv, tcurl, euler, spatial_euler,
    homotopy_witness,
)

u = jet("u")
ux = jet("u", ("x1",))
x1, x2, x3 = coord("x1"), coord("x2"), coord("x3")

print("== canonical forms ==")
e = (u + 1) * (u - 1) - u * u
print("(u+1)(u-1) - u^2          ->", format_expr(e))
print("(u^2-1)/(u-1)             ->", format_expr((u * u - 1) / (u - 1)))
print("u*u_x1 - (1/2) D1(u^2)    ->",
      format_expr(u * ux - total_di(u * u, 1) / 2))

print()
print("== total derivatives raise the jet order ==")
print("D_t(u^2)   =", format_expr(total_dt(u * u)))
print("D_1(u^2)   =", format_expr(total_di(u * u, 1)))
print("D_1(D_t u) =", format_expr(total_di(total_dt(u), 1)),
      " (mixed index is unordered)")

print()
print("== vector calculus on jet space ==")
F = VectorExpr(jet("v1"), jet("v2"), jet("v3"))
print("Div(Curl F) =", format_expr(tdiv(tcurl(F))))
print("Curl(Grad u) =", tcurl(tgrad(u)))
print("classical curl of (-x2, x1, 0):", tcurl(VectorExpr(-x2, x1, Expr.const(0))))

print()
print("== Euler operators characterize exact differentials ==")
cand = total_dt(u * u) + tdiv(F * u)
print("E_u(D_t T + Div X) =", format_expr(euler(cand, "u")))
dens = tdiv(F)
print("spatial E_v1(Div F) =", format_expr(spatial_euler(dens, "v1")))

print()
print("== witnesses are constructed, then re-verified ==")
target = VectorExpr(2 * x1, 2 * x2, 2 * x3)
theta = homotopy_witness(target, "grad")
print("grad witness of (2x1, 2x2, 2x3):", format_expr(theta))
phi = homotopy_witness(tdiv(F), "div")
print("div witness of Div v:", phi)
