"""Domain reduction: wrap f on [n]^d as g on [N]^d with N a power of two.

Each axis of the big grid is cut into n blocks (m short ones, then n - m
long ones); g reads f at the block indices.  One g query costs exactly one
f query, monotonicity is preserved, and distance shrinks by at most a
constant factor.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from typing import Tuple

from .func import BoolFunc
from .grid import GridShape


@dataclass(frozen=True)
class ReductionPlan:
    n: int
    d: int
    i: int
    N: int
    m: int
    block_sizes: Tuple[int, ...]
    boundaries: Tuple[int, ...]  # cumulative block ends, for coordinate lookup

    def __post_init__(self):
        if sum(self.block_sizes) != self.N:
            raise ValueError("block sizes must sum to N")
        if not 0 <= self.m <= self.n:
            raise ValueError(f"m={self.m} out of range [0, {self.n}]")
        if self.N & (self.N - 1):
            raise ValueError(f"N={self.N} is not a power of 2")


def plan(n: int, d: int) -> ReductionPlan:
    """Smallest offset i whose interval [n(d+i), n(d+i+1)] holds a power of two.

    The intervals cover [nd, 2nd], so some i works.  When two powers land in
    one interval the smaller is taken (smaller lifted domain).
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    for i in range(d):
        lo, hi = n * (d + i), n * (d + i + 1)
        p = 1 << max(lo - 1, 0).bit_length() if lo > 1 else 1
        if p <= hi:
            N = p
            m = n * (d + i + 1) - N
            sizes = (d + i,) * m + (d + i + 1,) * (n - m)
            bounds = tuple(itertools.accumulate(sizes))
            return ReductionPlan(n, d, i, N, m, sizes, bounds)
    raise AssertionError(f"no interval for n={n}, d={d} holds a power of 2")


def phi(p: ReductionPlan, y: int) -> int:
    """Block index of the big-grid coordinate y; monotone and surjective."""
    if not 0 <= y < p.N:
        raise ValueError(f"coordinate {y} out of range [0, {p.N})")
    return bisect_right(p.boundaries, y)


def lift(p: ReductionPlan, f: BoolFunc) -> BoolFunc:
    """g(y) = f applied blockwise; predicate-backed, one f query per g query."""
    if f.shape != GridShape(p.n, p.d):
        raise ValueError(f"plan is for {p.n}^{p.d}, function is on {f.shape.n}^{f.shape.d}")

    def g(y) -> int:
        return f.eval(tuple(phi(p, v) for v in y))

    return BoolFunc.from_predicate(GridShape(p.N, p.d), g)
