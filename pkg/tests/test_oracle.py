"""Exact-oracle tests: distances, matchings, influences, and their cross-checks."""

from fractions import Fraction
from itertools import combinations

import pytest

from gridmono.errors import CapacityError
from gridmono.func import BoolFunc, generate
from gridmono.grid import GridShape, directed_distance, dominates, points
from gridmono.oracle import (
    brute_force_distance,
    distance_to_monotonicity,
    gamma_minus,
    influence_bound_check,
    influence_report,
    isoperimetry_report,
    monotone_masks,
    optimal_matching,
    violated_aug_edges,
    violation_graph,
)


def mask_function(shape, mask):
    return BoolFunc.from_table(shape, [(mask >> k) & 1 for k in range(shape.size)])


def all_maximum_matchings(arcs, max_size=None):
    """Oracle: every maximum matching of the arc set, by direct enumeration."""
    if max_size is None:
        best = 0
        for size in range(len(arcs), 0, -1):
            for combo in combinations(arcs, size):
                lows = [a for a, _ in combo]
                highs = [b for _, b in combo]
                if len(set(lows)) == size and len(set(highs)) == size:
                    best = size
                    break
            if best:
                break
        max_size = best
    if max_size == 0:
        return [()]
    return [combo for combo in combinations(arcs, max_size)
            if len({a for a, _ in combo}) == max_size
            and len({b for _, b in combo}) == max_size]


def test_violated_aug_edges_examples():
    shape = GridShape(4, 1)
    f = mask_function(shape, 0b0011)  # table (1,1,0,0)
    s_minus, s_plus = violated_aug_edges(f)
    assert {(e.lower, e.upper) for e in s_minus} == {((1,), (2,)), ((0,), (2,)), ((1,), (3,))}
    assert s_plus == []
    mono = generate("monotone_threshold", GridShape(4, 2), seed=1)
    assert violated_aug_edges(mono)[0] == []
    const = BoolFunc.from_table(shape, [1, 1, 1, 1])
    assert violated_aug_edges(const) == ([], [])


def test_distance_examples():
    shape = GridShape(4, 1)
    report = distance_to_monotonicity(mask_function(shape, 0b0011))
    assert report.eps == Fraction(1, 2)
    assert len(report.matching) == 2
    assert distance_to_monotonicity(mask_function(shape, 0b1100)).eps == 0
    assert distance_to_monotonicity(mask_function(shape, 0b0001)).eps == Fraction(1, 4)


def test_distance_witness_is_valid():
    shape = GridShape(4, 2)
    f = generate("uniform_random", shape, seed=13)
    report = distance_to_monotonicity(f)
    used = set()
    for x, y in report.matching:
        assert f.eval(x) == 1 and f.eval(y) == 0
        assert dominates(y, x) and x != y
        assert x not in used and y not in used
        used.update((x, y))


def test_brute_force_agreement_exhaustive():
    for shape in (GridShape(2, 2), GridShape(3, 2), GridShape(2, 3)):
        for mask in range(1 << shape.size):
            f = mask_function(shape, mask)
            assert distance_to_monotonicity(f).eps == brute_force_distance(f), mask


def test_brute_force_agreement_sampled(rng):
    # a thousand random functions across grids up to the 20-point cap
    for shape, samples in ((GridShape(4, 2), 400), (GridShape(2, 4), 400),
                           (GridShape(20, 1), 200)):
        for _ in range(samples):
            f = mask_function(shape, rng.randrange(1 << shape.size))
            assert distance_to_monotonicity(f).eps == brute_force_distance(f)


def test_brute_force_capacity():
    with pytest.raises(CapacityError):
        brute_force_distance(generate("anti_slab", GridShape(5, 2)))
    with pytest.raises(CapacityError):
        monotone_masks(GridShape(8, 3))


def test_gamma_examples():
    shape = GridShape(4, 1)
    rep = gamma_minus(mask_function(shape, 0b0011))
    assert rep.gamma == Fraction(2, 4)
    touched = set()
    for e in rep.witness:
        assert e.lower not in touched and e.upper not in touched
        touched.update((e.lower, e.upper))
    assert gamma_minus(generate("monotone_threshold", shape, seed=2)).gamma == 0
    assert gamma_minus(mask_function(shape, 0b0001)).gamma == Fraction(1, 4)


def test_optimal_matching_examples():
    shape = GridShape(4, 1)
    rep = optimal_matching(mask_function(shape, 0b0011))
    assert set(rep.pairs) == {((0,), (2,)), ((1,), (3,))}
    assert rep.r == 1 and rep.psi == 2 and not rep.empty
    mono = optimal_matching(generate("monotone_threshold", shape, seed=2))
    assert mono.empty and mono.pairs == () and mono.r == 0


def lex_signature(shape, matching):
    dists = [directed_distance(shape, x, y) for x, y in matching]
    return len(matching), sum(dists), -sum(d * d for d in dists)


def test_optimal_matching_lexicographic_vs_enumeration(rng):
    shapes = [GridShape(2, 2), GridShape(4, 1), GridShape(2, 3), GridShape(3, 2)]
    cases = []
    for shape in shapes[:2]:
        cases.extend((shape, mask) for mask in range(1 << shape.size))
    for shape in shapes[2:]:
        cases.extend((shape, rng.randrange(1 << shape.size)) for _ in range(150))
    for shape, mask in cases:
        f = mask_function(shape, mask)
        rep = optimal_matching(f)
        vg = violation_graph(f)
        pts = list(points(shape))
        arcs = [(pts[i], pts[j]) for i, j, _ in vg.arcs]
        best = None
        for matching in all_maximum_matchings(arcs, max_size=len(rep.pairs) or None):
            sig = lex_signature(shape, matching)
            best = sig if best is None else min(best, sig)
        got = lex_signature(shape, rep.pairs)
        if rep.empty:
            assert not arcs
        else:
            assert got == best, (shape, mask)


def test_isoperimetry_examples():
    shape = GridShape(4, 1)
    rep = isoperimetry_report(mask_function(shape, 0b0011))
    assert rep.margulis_ratio == Fraction(3, 2)
    rep2 = isoperimetry_report(mask_function(shape, 0b0001))
    assert rep2.margulis_ratio == Fraction(2)
    mono = isoperimetry_report(generate("monotone_threshold", shape, seed=2))
    assert mono.influence.eps == 0
    assert mono.margulis_ratio is None and mono.edge_ratio is None and mono.vertex_ratio is None


def test_influence_identities(rng):
    shape = GridShape(4, 2)
    bound = shape.d * shape.bits
    for _ in range(200):
        f = mask_function(shape, rng.randrange(1 << shape.size))
        rep = influence_report(f)
        assert rep.I == rep.I_plus + rep.I_minus
        assert 0 <= rep.I <= bound
        assert 0 <= rep.eps <= 1
        assert rep.gamma_minus <= rep.I_minus
        assert rep.gamma_minus <= Fraction(1, 2)
        if rep.eps > 0:
            assert rep.I_minus > 0 and rep.gamma_minus > 0
        else:
            assert rep.I_minus == 0


def test_module_regression_minima():
    # frozen from the exhaustive sweeps of these two shapes
    for shape, frozen in ((GridShape(4, 1), Fraction(1)), (GridShape(2, 2), Fraction(1))):
        best = None
        for mask in range(1 << shape.size):
            rep = isoperimetry_report(mask_function(shape, mask))
            if rep.margulis_ratio is None:
                continue
            assert rep.margulis_ratio > 0
            best = rep.margulis_ratio if best is None else min(best, rep.margulis_ratio)
        assert best == frozen


def test_influence_bound_examples():
    shape = GridShape(4, 2)
    const = BoolFunc.from_table(shape, [0] * shape.size)
    chk = influence_bound_check(const)
    assert chk.applicable and chk.holds and chk.I == 0
    with pytest.raises(ValueError):
        influence_bound_check(BoolFunc.from_table(GridShape(2, 2), [0] * 4))


def test_influence_bound_sampled(rng):
    shape = GridShape(8, 3)
    for _ in range(10_000):
        f = BoolFunc.from_table(
            shape, [rng.getrandbits(1) for _ in range(shape.size)])
        chk = influence_bound_check(f)
        if chk.applicable:
            assert chk.holds
