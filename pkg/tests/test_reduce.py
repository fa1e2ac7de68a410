"""Domain-reduction tests: plans, the block map, and lifted functions."""

from fractions import Fraction

import pytest

from gridmono.func import BoolFunc, generate, is_monotone
from gridmono.grid import GridShape
from gridmono.oracle import distance_to_monotonicity, monotone_masks
from gridmono.reduce import lift, phi, plan


def mask_function(shape, mask):
    return BoolFunc.from_table(shape, [(mask >> k) & 1 for k in range(shape.size)])


def test_plan_examples():
    p = plan(3, 2)
    assert (p.i, p.N, p.m) == (0, 8, 1)
    assert p.block_sizes == (2, 3, 3)
    p = plan(2, 1)
    assert (p.N, p.m) == (2, 2)
    assert p.block_sizes == (1, 1)
    p = plan(3, 1)
    assert (p.N, p.m) == (4, 2)
    assert p.block_sizes == (1, 1, 2)
    # a power-of-two n still gets a plan, no shortcut
    p = plan(4, 2)
    assert p.N & (p.N - 1) == 0


def test_plan_properties():
    for n in range(1, 12):
        for d in range(1, 9):
            p = plan(n, d)
            assert sum(p.block_sizes) == p.N
            assert p.block_sizes.count(d + p.i) == p.m
            assert len(p.block_sizes) == n
            assert n * d <= p.N <= 2 * n * (d + 1)
            assert n * (d + p.i) <= p.N <= n * (d + p.i + 1)


def test_phi_examples():
    p = plan(3, 2)
    assert [phi(p, y) for y in range(8)] == [0, 0, 1, 1, 1, 2, 2, 2]
    for n, d in ((2, 1), (3, 1), (5, 3), (7, 2)):
        p = plan(n, d)
        assert phi(p, 0) == 0
        assert phi(p, p.N - 1) == n - 1
        values = [phi(p, y) for y in range(p.N)]
        assert values == sorted(values)
        assert set(values) == set(range(n))
    with pytest.raises(ValueError):
        phi(plan(3, 2), 8)


def test_lift_example_table():
    f = BoolFunc.from_table(GridShape(3, 1), [1, 0, 0])
    g = lift(plan(3, 1), f)
    assert g.shape == GridShape(4, 1)
    assert g.table() == [1, 0, 0, 0]


def test_lift_preserves_monotone():
    for n, d in ((3, 1), (3, 2), (5, 1)):
        shape = GridShape(n, d)
        p = plan(n, d)
        for mask in monotone_masks(shape):
            assert is_monotone(lift(p, mask_function(shape, mask)))


def test_lift_distance_bound_exhaustive():
    for n, d in ((3, 1), (2, 1), (2, 2)):
        shape = GridShape(n, d)
        p = plan(n, d)
        for mask in range(1 << shape.size):
            f = mask_function(shape, mask)
            eps_f = distance_to_monotonicity(f).eps
            eps_g = distance_to_monotonicity(lift(p, f)).eps
            assert eps_g >= Fraction(eps_f, 6)


def test_lift_distance_bound_sampled(rng):
    for n, d, samples in ((3, 2, 60), (5, 1, 60), (5, 2, 15)):
        shape = GridShape(n, d)
        p = plan(n, d)
        for _ in range(samples):
            f = mask_function(shape, rng.randrange(1 << shape.size))
            eps_f = distance_to_monotonicity(f).eps
            eps_g = distance_to_monotonicity(lift(p, f)).eps
            assert eps_g >= Fraction(eps_f, 6)


def test_lift_query_forwarding(rng):
    shape = GridShape(3, 2)
    f = generate("uniform_random", shape, seed=21)
    p = plan(3, 2)
    g = lift(p, f)
    for k in range(1, 30):
        g.eval((rng.randrange(p.N), rng.randrange(p.N)))
        assert f.queries == k and g.queries == k


def test_lift_shape_mismatch():
    f = generate("uniform_random", GridShape(4, 2), seed=1)
    with pytest.raises(ValueError):
        lift(plan(3, 2), f)
