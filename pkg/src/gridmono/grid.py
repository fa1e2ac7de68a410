"""The hypergrid domain, its augmented edge set, and the edge matching family.

Points of the n^d grid are plain tuples of ints with 0-indexed coordinates
in [0, n).  The augmented edge set joins any two points differing in exactly
one coordinate by a power of two.  For n a power of two the augmented edges
are partitioned into matchings, one per (dimension, step exponent, parity).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

# compare() outcomes
LESS = "less"
EQUAL = "equal"
GREATER = "greater"
INCOMPARABLE = "incomparable"

# classify_in_matching() roles
LOWER = "lower"
UPPER = "upper"
UNMATCHED = "unmatched"

# Construction guard: n^d must stay addressable as a platform index.
MAX_POINTS = 1 << 62

Point = tuple


@dataclass(frozen=True)
class GridShape:
    """Side length and dimension of the grid [n]^d."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError(f"need n >= 1 and d >= 1, got n={self.n}, d={self.d}")
        # Avoid computing an astronomically large n**d just to reject it.
        if self.d * max(self.n - 1, 1).bit_length() > 70 or self.n ** self.d > MAX_POINTS:
            raise ValueError(f"grid {self.n}^{self.d} exceeds the index range")

    @property
    def size(self) -> int:
        return self.n ** self.d

    def is_pow2(self) -> bool:
        return self.n & (self.n - 1) == 0

    @property
    def bits(self) -> int:
        """log2(n); only meaningful when n is a power of two."""
        if not self.is_pow2():
            raise ValueError(f"n={self.n} is not a power of 2")
        return self.n.bit_length() - 1


@dataclass(frozen=True)
class MatchingId:
    """Identifier of the edge matching with step 2**exp along `dim`.

    parity 0 matchings are perfect; parity 1 matchings leave the boundary
    blocks unmatched and are empty at the largest exponent.
    """

    dim: int
    exp: int
    parity: int

    def __post_init__(self):
        if self.dim < 0 or self.exp < 0 or self.parity not in (0, 1):
            raise ValueError(f"bad matching id {self}")

    @property
    def step(self) -> int:
        return 1 << self.exp


@dataclass(frozen=True)
class AugEdge:
    lower: Point
    upper: Point
    id: MatchingId


def check_matching_id(shape: GridShape, m: MatchingId) -> None:
    if m.dim >= shape.d:
        raise ValueError(f"dimension {m.dim} out of range for d={shape.d}")
    if m.exp >= shape.bits:
        raise ValueError(f"step 2^{m.exp} too long for n={shape.n}")


def check_point(shape: GridShape, p: Point) -> None:
    if len(p) != shape.d:
        raise ValueError(f"point {p} has {len(p)} coordinates, expected {shape.d}")
    for v in p:
        if not 0 <= v < shape.n:
            raise ValueError(f"coordinate {v} out of range [0, {shape.n})")


def linear_index(shape: GridShape, p: Point) -> int:
    """Row-major index with dimension 0 fastest-varying."""
    check_point(shape, p)
    idx = 0
    for v in reversed(p):
        idx = idx * shape.n + v
    return idx


def point_of(shape: GridShape, idx: int) -> Point:
    """Inverse of linear_index."""
    if not 0 <= idx < shape.size:
        raise ValueError(f"index {idx} out of range [0, {shape.size})")
    coords = []
    for _ in range(shape.d):
        idx, v = divmod(idx, shape.n)
        coords.append(v)
    return tuple(coords)


def points(shape: GridShape) -> Iterator[Point]:
    """All grid points in linear-index order."""
    for rev in itertools.product(range(shape.n), repeat=shape.d):
        yield rev[::-1]


def compare(x: Point, y: Point) -> str:
    if len(x) != len(y):
        raise ValueError(f"points {x} and {y} have different dimensions")
    some_less = some_greater = False
    for a, b in zip(x, y):
        if a < b:
            some_less = True
        elif a > b:
            some_greater = True
    if some_less and some_greater:
        return INCOMPARABLE
    if some_less:
        return LESS
    if some_greater:
        return GREATER
    return EQUAL


def dominates(y: Point, x: Point) -> bool:
    """True iff x <= y coordinate-wise."""
    return all(a <= b for a, b in zip(x, y))


def classify_in_matching(shape: GridShape, x: Point, m: MatchingId):
    """Role of x in the matching m: (LOWER|UPPER|UNMATCHED, partner or None).

    Requires n to be a power of two.  With s = 2**exp, parity 0 matches v
    with v mod 2s < s upward; parity 1 matches v with v mod 2s >= s upward
    when the partner stays on the grid.
    """
    check_matching_id(shape, m)
    check_point(shape, x)
    s = m.step
    v = x[m.dim]
    r = v % (2 * s)
    if m.parity == 0:
        if r < s:
            return LOWER, _with_coord(x, m.dim, v + s)
        return UPPER, _with_coord(x, m.dim, v - s)
    if r >= s and v + s <= shape.n - 1:
        return LOWER, _with_coord(x, m.dim, v + s)
    if r < s and v - s >= 0:
        return UPPER, _with_coord(x, m.dim, v - s)
    return UNMATCHED, None


def side_in_matching(shape: GridShape, x: Point, m: MatchingId) -> str:
    """Which side of m the coordinate residue puts x on, ignoring range guards.

    Every point is on exactly one side, even points that classify_in_matching
    reports as unmatched.  This is the side notion used for pair
    classification and the pair potential.
    """
    s = m.step
    r = x[m.dim] % (2 * s)
    if m.parity == 0:
        return LOWER if r < s else UPPER
    return LOWER if r >= s else UPPER


def _with_coord(x: Point, dim: int, v: int) -> Point:
    return x[:dim] + (v,) + x[dim + 1:]


def matching_ids(shape: GridShape) -> Iterator[MatchingId]:
    """All matching identifiers for a power-of-two grid."""
    for dim in range(shape.d):
        for exp in range(shape.bits):
            for parity in (0, 1):
                yield MatchingId(dim, exp, parity)


def enumerate_matching(shape: GridShape, m: MatchingId) -> list:
    """All edges of the matching m, lower endpoint first."""
    check_matching_id(shape, m)
    s = m.step
    if m.parity == 0:
        lowers = [v for v in range(shape.n) if v % (2 * s) < s]
    else:
        lowers = [v for v in range(shape.n) if v % (2 * s) >= s and v + s <= shape.n - 1]
    edges = []
    other_dims = [i for i in range(shape.d) if i != m.dim]
    for rest in itertools.product(range(shape.n), repeat=len(other_dims)):
        base = [0] * shape.d
        for i, v in zip(other_dims, rest):
            base[i] = v
        for v in lowers:
            base[m.dim] = v
            lo = tuple(base)
            edges.append(AugEdge(lo, _with_coord(lo, m.dim, v + s), m))
    return edges


def steps(shape: GridShape) -> list:
    """Allowed step lengths: powers of two that fit on one axis."""
    out = []
    s = 1
    while s <= shape.n - 1:
        out.append(s)
        s *= 2
    return out


def enumerate_augmented_edges(shape: GridShape) -> Iterator[AugEdge]:
    """Every augmented edge, each tagged with the matching that owns it.

    Works for any n (steps are the powers of two at most n-1); for
    power-of-two n the tags partition the edge set into the matching family.
    """
    for dim in range(shape.d):
        for exp, s in enumerate(steps(shape)):
            other_dims = [i for i in range(shape.d) if i != dim]
            for rest in itertools.product(range(shape.n), repeat=len(other_dims)):
                base = [0] * shape.d
                for i, v in zip(other_dims, rest):
                    base[i] = v
                for v in range(shape.n - s):
                    parity = 0 if v % (2 * s) < s else 1
                    base[dim] = v
                    lo = tuple(base)
                    yield AugEdge(lo, _with_coord(lo, dim, v + s), MatchingId(dim, exp, parity))


def num_augmented_edges(shape: GridShape) -> int:
    per_axis = sum(shape.n - s for s in steps(shape))
    return shape.d * shape.n ** (shape.d - 1) * per_axis


def directed_distance(shape: GridShape, x: Point, y: Point) -> Optional[int]:
    """Minimum number of upward augmented steps from x to y; None if x !<= y.

    Each coordinate gap decomposes into its binary digits, so the distance
    is the total popcount of the gaps.  Intermediate points stay on the grid
    because partial sums never exceed the target coordinate.
    """
    check_point(shape, x)
    check_point(shape, y)
    total = 0
    for a, b in zip(x, y):
        if b < a:
            return None
        total += (b - a).bit_count()
    return total


def aug_up_neighbors(shape: GridShape, x: Point) -> Iterator[Point]:
    """Points one augmented step above x."""
    for dim in range(shape.d):
        v = x[dim]
        for s in steps(shape):
            if v + s <= shape.n - 1:
                yield _with_coord(x, dim, v + s)
