import random

import pytest

from conslaw.expr import Expr, VectorExpr, ZERO, jet, coord


def rand_expr(rng, atoms, depth=3):
    """Random polynomial expression over the given atoms."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.65:
            return rng.choice(atoms)
        return Expr.const(rng.randint(-3, 3))
    op = rng.random()
    a = rand_expr(rng, atoms, depth - 1)
    b = rand_expr(rng, atoms, depth - 1)
    if op < 0.45:
        return a + b
    if op < 0.85:
        return a * b
    return a - b


def rand_vector(rng, atoms, depth=2):
    return VectorExpr(rand_expr(rng, atoms, depth),
                      rand_expr(rng, atoms, depth),
                      rand_expr(rng, atoms, depth))


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def jet_atoms():
    return [jet("u"), jet("v"), jet("u", ("x1",)), jet("v", ("x2",)),
            jet("u", ("t",)), jet("v", ("x3",)),
            coord("x1"), coord("x2"), coord("x3"), coord("t")]
