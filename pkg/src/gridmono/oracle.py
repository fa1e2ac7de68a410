"""Exact desk-scale oracles: violation graph, distance, influences, ratios.

Everything here enumerates the grid, so it is guarded by a point-count
capacity.  Distances between matched violation pairs use the directed
augmented-hypergrid metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import CapacityError, IntegrityError
from .func import BoolFunc
from .grid import (
    AugEdge,
    GridShape,
    directed_distance,
    dominates,
    enumerate_augmented_edges,
    linear_index,
    points,
)

ORACLE_CAPACITY = 4096
BRUTE_FORCE_CAPACITY = 20


@dataclass(frozen=True)
class ShapeTables:
    """Per-shape enumeration shared by all exact oracles."""

    shape: GridShape
    points: tuple
    comparable: tuple      # (lo_index, hi_index, directed distance), strict pairs
    aug_edges: tuple       # (lo_index, hi_index, AugEdge)
    unit_edges: tuple      # (lo_index, hi_index) along single unit steps


@lru_cache(maxsize=64)
def shape_tables(shape: GridShape) -> ShapeTables:
    if shape.size > ORACLE_CAPACITY:
        raise CapacityError(f"{shape.size} points exceed the exact-oracle capacity")
    pts = tuple(points(shape))
    comparable = []
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if i != j and dominates(y, x):
                comparable.append((i, j, directed_distance(shape, x, y)))
    aug = tuple(
        (linear_index(shape, e.lower), linear_index(shape, e.upper), e)
        for e in enumerate_augmented_edges(shape))
    unit = []
    stride = 1
    for _ in range(shape.d):
        period = stride * shape.n
        for base in range(0, shape.size, period):
            for off in range(base, base + period - stride):
                unit.append((off, off + stride))
        stride = period
    return ShapeTables(shape, pts, tuple(comparable), aug, tuple(unit))


def _table_of(f: BoolFunc) -> list:
    if f.shape.size > ORACLE_CAPACITY:
        raise CapacityError(f"{f.shape.size} points exceed the exact-oracle capacity")
    return f.table()


def hopcroft_karp(adj: List[List[int]], n_right: int) -> Tuple[int, List[int], List[int]]:
    """Maximum bipartite matching size plus both matched-partner arrays.

    adj[u] lists the right neighbours of left vertex u.  Unmatched slots
    hold -1.  Deterministic for a fixed adjacency order.
    """
    n_left = len(adj)
    INF = n_left + n_right + 1
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        queue = []
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size, match_l, match_r


@dataclass(frozen=True)
class ViolationGraph:
    ones: tuple      # indices with f = 1
    zeros: tuple     # indices with f = 0
    arcs: tuple      # (one_index, zero_index, distance) with one < zero in the order


def violation_graph(f: BoolFunc) -> ViolationGraph:
    table = _table_of(f)
    st = shape_tables(f.shape)
    ones = tuple(i for i, b in enumerate(table) if b)
    zeros = tuple(i for i, b in enumerate(table) if not b)
    arcs = tuple((i, j, dist) for i, j, dist in st.comparable
                 if table[i] and not table[j])
    return ViolationGraph(ones, zeros, arcs)


@dataclass(frozen=True)
class DistanceReport:
    eps: Fraction
    matching: tuple  # (lower point, upper point) violation pairs


def distance_to_monotonicity(f: BoolFunc) -> DistanceReport:
    """Distance via the maximum matching in the violation graph.

    For Boolean functions the minimum number of value changes equals the
    maximum violation matching; that equivalence is itself tested against
    brute_force_distance rather than assumed blindly.
    """
    vg = violation_graph(f)
    st = shape_tables(f.shape)
    one_pos = {idx: k for k, idx in enumerate(vg.ones)}
    zero_pos = {idx: k for k, idx in enumerate(vg.zeros)}
    adj: List[List[int]] = [[] for _ in vg.ones]
    for i, j, _ in vg.arcs:
        adj[one_pos[i]].append(zero_pos[j])
    size, match_l, _ = hopcroft_karp(adj, len(vg.zeros))
    pairs = tuple(
        (st.points[vg.ones[u]], st.points[vg.zeros[v]])
        for u, v in enumerate(match_l) if v != -1)
    if len(pairs) != size:
        raise IntegrityError("matching size mismatch")
    return DistanceReport(Fraction(size, f.shape.size), pairs)


@lru_cache(maxsize=32)
def monotone_masks(shape: GridShape) -> tuple:
    """Bitmasks of every monotone function on a tiny grid."""
    if shape.size > BRUTE_FORCE_CAPACITY:
        raise CapacityError(f"{shape.size} points exceed the brute-force capacity")
    st = shape_tables(shape)
    edges = [(1 << lo, 1 << hi) for lo, hi in st.unit_edges]
    out = []
    for mask in range(1 << shape.size):
        if all(not (mask & lo and not mask & hi) for lo, hi in edges):
            out.append(mask)
    return tuple(out)


def brute_force_distance(f: BoolFunc) -> Fraction:
    """Independent oracle: minimum changed fraction over all monotone tables."""
    table = _table_of(f)
    shape = f.shape
    fmask = 0
    for k, b in enumerate(table):
        if b:
            fmask |= 1 << k
    best = min((fmask ^ g).bit_count() for g in monotone_masks(shape))
    return Fraction(best, shape.size)


def violated_aug_edges(f: BoolFunc) -> Tuple[List[AugEdge], List[AugEdge]]:
    """(S_minus, S_plus): violated and upward-sensitive augmented edges."""
    table = _table_of(f)
    st = shape_tables(f.shape)
    s_minus = [e for lo, hi, e in st.aug_edges if table[lo] and not table[hi]]
    s_plus = [e for lo, hi, e in st.aug_edges if not table[lo] and table[hi]]
    return s_minus, s_plus


@dataclass(frozen=True)
class GammaReport:
    gamma: Fraction
    witness: tuple   # vertex-disjoint violated AugEdges


def gamma_minus(f: BoolFunc) -> GammaReport:
    """Largest set of pairwise vertex-disjoint violated augmented edges.

    Violated edges run from 1-points to 0-points, so this is a bipartite
    matching problem.
    """
    table = _table_of(f)
    st = shape_tables(f.shape)
    violated = [(lo, hi, e) for lo, hi, e in st.aug_edges
                if table[lo] and not table[hi]]
    lows = sorted({lo for lo, _, _ in violated})
    highs = sorted({hi for _, hi, _ in violated})
    low_pos = {idx: k for k, idx in enumerate(lows)}
    high_pos = {idx: k for k, idx in enumerate(highs)}
    adj: List[List[int]] = [[] for _ in lows]
    edge_of = {}
    for lo, hi, e in violated:
        adj[low_pos[lo]].append(high_pos[hi])
        edge_of[(low_pos[lo], high_pos[hi])] = e
    size, match_l, _ = hopcroft_karp(adj, len(highs))
    witness = tuple(edge_of[(u, v)] for u, v in enumerate(match_l) if v != -1)
    if len(witness) != size:
        raise IntegrityError("gamma witness size mismatch")
    return GammaReport(Fraction(size, f.shape.size), witness)


@dataclass(frozen=True)
class OptimalMatchingReport:
    pairs: tuple         # (lower point, upper point), f-violating
    r: Fraction          # average directed distance; 0 when empty
    psi: int             # sum of squared distances
    empty: bool


def optimal_matching(f: BoolFunc) -> OptimalMatchingReport:
    """A maximum violation matching minimizing

    the total directed distance and, among those, maximizing the sum of
    squared distances.  Encoded as one assignment solve with per-arc cost
    dist*K - dist^2, K = 1 + (point count) * (max dist)^2, which makes the
    linear term dominate any squared-term variation.
    """
    vg = violation_graph(f)
    st = shape_tables(f.shape)
    if not vg.arcs:
        return OptimalMatchingReport((), Fraction(0), 0, True)
    one_pos = {idx: k for k, idx in enumerate(vg.ones)}
    zero_pos = {idx: k for k, idx in enumerate(vg.zeros)}
    dmax = max(dist for _, _, dist in vg.arcs)
    K = 1 + f.shape.size * dmax * dmax
    m = min(len(vg.ones), len(vg.zeros))
    forbid = float(m * dmax * K + 1)
    cost = np.full((len(vg.ones), len(vg.zeros)), forbid)
    for i, j, dist in vg.arcs:
        cost[one_pos[i], zero_pos[j]] = dist * K - dist * dist
    rows, cols = linear_sum_assignment(cost)
    pairs = []
    total = 0
    psi = 0
    for u, v in zip(rows, cols):
        if cost[u, v] >= forbid:
            continue
        x = st.points[vg.ones[u]]
        y = st.points[vg.zeros[v]]
        dist = directed_distance(f.shape, x, y)
        pairs.append((x, y))
        total += dist
        psi += dist * dist
    adj: List[List[int]] = [[] for _ in vg.ones]
    for i, j, _ in vg.arcs:
        adj[one_pos[i]].append(zero_pos[j])
    expected, _, _ = hopcroft_karp(adj, len(vg.zeros))
    if len(pairs) != expected:
        raise IntegrityError(
            f"assignment kept {len(pairs)} pairs, maximum matching has {expected}")
    return OptimalMatchingReport(tuple(pairs), Fraction(total, len(pairs)), psi, False)


@dataclass(frozen=True)
class InfluenceReport:
    I: Fraction
    I_plus: Fraction
    I_minus: Fraction
    gamma_minus: Fraction
    eps: Fraction
    r: Fraction
    sensitive_edges: int
    positive_edges: int
    violated_edges: int
    gamma_count: int
    matching_size: int


@dataclass(frozen=True)
class IsoperimetryReport:
    influence: InfluenceReport
    margulis_ratio: Optional[Fraction]
    edge_ratio: Optional[Fraction]
    vertex_ratio: Optional[Fraction]


def influence_report(f: BoolFunc) -> InfluenceReport:
    size = f.shape.size
    s_minus, s_plus = violated_aug_edges(f)
    gm = gamma_minus(f)
    dist = distance_to_monotonicity(f)
    mstar = optimal_matching(f)
    neg, pos = len(s_minus), len(s_plus)
    return InfluenceReport(
        I=Fraction(neg + pos, size),
        I_plus=Fraction(pos, size),
        I_minus=Fraction(neg, size),
        gamma_minus=gm.gamma,
        eps=dist.eps,
        r=mstar.r,
        sensitive_edges=neg + pos,
        positive_edges=pos,
        violated_edges=neg,
        gamma_count=len(gm.witness),
        matching_size=len(dist.matching),
    )


def isoperimetry_report(f: BoolFunc) -> IsoperimetryReport:
    """Exact influence quantities plus the three isoperimetry ratios.

    Ratios are omitted (None) for monotone inputs, where eps = 0.
    """
    inf = influence_report(f)
    if inf.eps == 0:
        return IsoperimetryReport(inf, None, None, None)
    margulis = inf.I_minus * inf.gamma_minus / (inf.eps * inf.eps)
    edge = inf.I_minus / (inf.r * inf.eps)
    vertex = inf.gamma_minus * inf.r / inf.eps
    return IsoperimetryReport(inf, margulis, edge, vertex)


@dataclass(frozen=True)
class InfluenceBoundCheck:
    applicable: bool
    holds: bool
    I: Fraction
    I_minus: Fraction


def influence_bound_check(f: BoolFunc) -> InfluenceBoundCheck:
    """Total-influence bound: small negative influence caps the total.

    applicable iff I_minus < sqrt(d); holds iff I < 7 sqrt(d) log2(n).
    Both comparisons are done on squares, so the check is exact.
    """
    shape = f.shape
    if not shape.is_pow2() or shape.n < 4:
        raise ValueError("needs n a power of 2 with n >= 4")
    size = shape.size
    s_minus, s_plus = violated_aug_edges(f)
    I_minus = Fraction(len(s_minus), size)
    I = Fraction(len(s_minus) + len(s_plus), size)
    applicable = I_minus * I_minus < shape.d
    holds = I * I < 49 * shape.d * shape.bits * shape.bits
    return InfluenceBoundCheck(applicable, holds, I, I_minus)
