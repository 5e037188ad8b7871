"""Total derivatives, vector calculus identities, Euler operators, and
homotopy witnesses."""
import random

import pytest

from conslaw.expr import Expr, VectorExpr, ZERO, coord, jet, param
from conslaw.jetcalc import (
    total_dt, total_di, tgrad, tdiv, tcurl, euler, spatial_euler,
    is_total_div, is_total_curl, is_total_grad, homotopy_witness,
    WitnessUnavailable, vector_total_dt,
)
from conftest import rand_expr, rand_vector

u, v = jet("u"), jet("v")
x1, x2, x3 = coord("x1"), coord("x2"), coord("x3")


def test_total_dt_chain_rule():
    assert (total_dt(u * u) - 2 * u * jet("u", ("t",))).is_zero


def test_total_di_product_rule():
    rho, u1 = jet("rho"), jet("u1")
    got = total_di(rho * u1, 1)
    want = jet("rho", ("x1",)) * u1 + rho * jet("u1", ("x1",))
    assert (got - want).is_zero


def test_derivative_commutators(rng, jet_atoms):
    for _ in range(200):
        e = rand_expr(rng, jet_atoms, 2)
        assert (total_dt(total_di(e, 2)) - total_di(total_dt(e), 2)).is_zero
        assert (total_di(total_di(e, 1), 3)
                - total_di(total_di(e, 3), 1)).is_zero


def test_div_curl_and_curl_grad_identities(rng, jet_atoms):
    for _ in range(200):
        F = rand_vector(rng, jet_atoms)
        f = rand_expr(rng, jet_atoms, 2)
        assert tdiv(tcurl(F)).is_zero
        assert tcurl(tgrad(f)).is_zero


def test_classical_coordinate_curl():
    w = tcurl(VectorExpr(-x2, x1, ZERO))
    assert w == VectorExpr(ZERO, ZERO, Expr.const(2))


def test_euler_annihilates_total_divergences(rng, jet_atoms):
    for _ in range(200):
        phi_t = rand_expr(rng, jet_atoms, 2)
        F = rand_vector(rng, jet_atoms)
        e = total_dt(phi_t) + tdiv(F)
        assert euler(e, "u").is_zero
        assert euler(e, "v").is_zero


def test_spatial_euler_annihilates_spatial_divergences(rng, jet_atoms):
    for _ in range(200):
        F = rand_vector(rng, jet_atoms)
        d = tdiv(F)
        assert spatial_euler(d, "u").is_zero
        assert spatial_euler(d, "v").is_zero


def test_spatial_euler_zeroth_order():
    rho = jet("rho")
    assert spatial_euler(rho, "rho") == 1


def test_exactness_tests_on_non_exact_inputs():
    F = VectorExpr(u, v, jet("w"))
    assert not is_total_grad(F)       # curl is a nonzero symbol
    G = VectorExpr(jet("u1"), jet("u2"), jet("u3"))
    assert not is_total_curl(G)       # div is a nonzero symbol
    assert not is_total_div(jet("u", ("t",)))


def test_is_total_div_of_cross_gradient():
    S = jet("S")
    uvec = VectorExpr(jet("u1"), jet("u2"), jet("u3"))
    dens = tdiv(uvec.cross(tgrad(S)))
    assert is_total_div(dens)


def test_grad_witness_pure_coordinates():
    th = homotopy_witness(VectorExpr(2 * x1, 2 * x2, 2 * x3), "grad")
    assert (th - (x1 ** 2 + x2 ** 2 + x3 ** 2)).is_zero


def test_curl_witness_coordinate_field():
    F = VectorExpr(ZERO, ZERO, Expr.const(2))
    th = homotopy_witness(F, "curl")
    assert (tcurl(th) - F).is_zero


def test_div_witness_linear_density():
    uvec = VectorExpr(jet("u1"), jet("u2"), jet("u3"))
    phi = homotopy_witness(tdiv(uvec), "div")
    assert phi == uvec


def test_homotopy_round_trips(rng, jet_atoms):
    for _ in range(25):
        A = rand_vector(rng, jet_atoms)
        F = tcurl(A)
        th = homotopy_witness(F, "curl")
        assert (tcurl(th) - F).is_zero
        f = rand_expr(rng, jet_atoms, 2)
        G = tgrad(f)
        tw = homotopy_witness(G, "grad")
        assert (tgrad(tw) - G).is_zero
        W = rand_vector(rng, jet_atoms)
        dv = tdiv(W)
        pw = homotopy_witness(dv, "div")
        assert (tdiv(pw) - dv).is_zero


def test_witness_gauge_freedom_tolerated(rng, jet_atoms):
    # the curl witness need not equal the generating potential
    A = VectorExpr(u * v, ZERO, ZERO)
    th = homotopy_witness(tcurl(A), "curl")
    assert (tcurl(th) - tcurl(A)).is_zero


def test_witness_unavailable_for_non_exact():
    with pytest.raises(WitnessUnavailable):
        homotopy_witness(VectorExpr(u, v, jet("w")), "grad")


def test_witness_unavailable_outside_class():
    from conslaw.expr import OpaqueFunction
    q = OpaqueFunction("qtest", 3)
    dens = q(x1, x2, x3)
    with pytest.raises(WitnessUnavailable):
        homotopy_witness(dens, "div")
