"""Boolean functions on the grid: storage, query counting, generators, I/O.

A BoolFunc is backed either by a dense bit table (canonical at desk scale)
or by a pure predicate (for larger grids where only sampling runs).  Every
evaluation, repeated or not, bumps the query counter.
"""

from __future__ import annotations

import io
import random
import threading
from typing import Callable, Optional, Sequence

from .errors import CapacityError, FormatError
from .grid import GridShape, Point, check_point, linear_index, point_of

MAGIC = b"AGF1"

# Dense tables are refused above this size; predicate backing still works.
DEFAULT_TABLE_CAPACITY = 1 << 24

# Generators with a closed form stay predicate-backed above this size, so
# building a test function never costs a full-grid materialization.
TABULATE_THRESHOLD = 1 << 16


class BoolFunc:
    """A queryable f: [n]^d -> {0,1} with an exact evaluation counter."""

    def __init__(self, shape: GridShape, table: Optional[Sequence[int]] = None,
                 predicate: Optional[Callable[[Point], int]] = None):
        if (table is None) == (predicate is None):
            raise ValueError("provide exactly one of table, predicate")
        if table is not None:
            table = list(table)
            if len(table) != shape.size:
                raise ValueError(f"table has {len(table)} entries, expected {shape.size}")
            if any(b not in (0, 1) for b in table):
                raise ValueError("table entries must be bits")
        self.shape = shape
        self._table = table
        self._predicate = predicate
        self.queries = 0
        self._lock = threading.Lock()

    @classmethod
    def from_table(cls, shape: GridShape, table: Sequence[int]) -> "BoolFunc":
        return cls(shape, table=table)

    @classmethod
    def from_predicate(cls, shape: GridShape, predicate: Callable[[Point], int]) -> "BoolFunc":
        return cls(shape, predicate=predicate)

    def is_table_backed(self) -> bool:
        return self._table is not None

    def eval(self, x: Point) -> int:
        check_point(self.shape, x)
        with self._lock:
            self.queries += 1
        if self._table is not None:
            return self._table[linear_index(self.shape, x)]
        v = self._predicate(x)
        if v not in (0, 1):
            raise ValueError(f"predicate returned non-bit {v!r}")
        return v

    def __call__(self, x: Point) -> int:
        return self.eval(x)

    def table(self, capacity: int = DEFAULT_TABLE_CAPACITY) -> list:
        """The dense bit table, materializing a predicate if small enough.

        Does not touch the query counter; this is oracle access, not querying.
        """
        if self._table is not None:
            return list(self._table)
        if self.shape.size > capacity:
            raise CapacityError(
                f"cannot materialize predicate over {self.shape.size} points")
        return [self._predicate(point_of(self.shape, i)) for i in range(self.shape.size)]


def is_monotone(f: BoolFunc, capacity: int = DEFAULT_TABLE_CAPACITY) -> bool:
    """Exact check over the unit-step grid edges (sufficient by transitivity)."""
    table = f.table(capacity)
    shape = f.shape
    stride = 1
    for _ in range(shape.d):
        period = stride * shape.n
        for base in range(0, shape.size, period):
            for off in range(base, base + period - stride):
                if table[off] > table[off + stride]:
                    return False
        stride = period
    return True


def restrict_line(f: BoolFunc, dim: int, fixed: Sequence[int]) -> BoolFunc:
    """The 1-dimensional restriction t -> f(... t at position dim ...).

    `fixed` lists the other d-1 coordinates in dimension order.  Queries
    forward to f, so both counters advance.
    """
    shape = f.shape
    if not 0 <= dim < shape.d:
        raise ValueError(f"dimension {dim} out of range")
    fixed = tuple(fixed)
    if len(fixed) != shape.d - 1:
        raise ValueError(f"expected {shape.d - 1} fixed coordinates, got {len(fixed)}")
    for v in fixed:
        if not 0 <= v < shape.n:
            raise ValueError(f"fixed coordinate {v} out of range")
    prefix, suffix = fixed[:dim], fixed[dim:]

    def line(p: Point) -> int:
        return f.eval(prefix + (p[0],) + suffix)

    return BoolFunc.from_predicate(GridShape(shape.n, 1), line)


def sort_line(g: BoolFunc) -> BoolFunc:
    """The monotone line 0^j 1^(n-j) with the same number of ones as g."""
    if g.shape.d != 1:
        raise ValueError("sort_line needs a line function")
    table = g.table()
    zeros = table.count(0)
    return BoolFunc.from_table(g.shape, [0] * zeros + [1] * (len(table) - zeros))


def generate(kind: str, shape: GridShape, seed: int = 0, **params) -> BoolFunc:
    """Deterministic test-family generator.

    Kinds: uniform_random, monotone_threshold, random_monotone, anti_slab,
    block_parity, noisy_monotone.  monotone_threshold and random_monotone
    are monotone by construction; anti_slab and block_parity are canonical
    far-from-monotone families.
    """
    rng = random.Random(seed)
    if kind == "uniform_random":
        _reject_params(params, set())
        return BoolFunc.from_table(shape, [rng.getrandbits(1) for _ in range(shape.size)])
    if kind == "monotone_threshold":
        _reject_params(params, {"weights", "theta"})
        weights = params.get("weights")
        if weights is None:
            weights = [rng.randint(1, 4) for _ in range(shape.d)]
        weights = list(weights)
        if len(weights) != shape.d or any(w < 0 for w in weights):
            raise ValueError("weights must be d nonnegative numbers")
        theta = params.get("theta")
        if theta is None:
            theta = sum(w * (shape.n - 1) for w in weights) / 2
        return _tabulate_or_wrap(
            shape, lambda x: 1 if sum(w * v for w, v in zip(weights, x)) >= theta else 0)
    if kind == "random_monotone":
        _reject_params(params, {"density"})
        density = params.get("density", 0.25)
        if not 0 <= density <= 1:
            raise ValueError("density must be in [0, 1]")
        _check_table_capacity(shape)
        table = [1 if rng.random() < density else 0 for _ in range(shape.size)]
        _upward_close(shape, table)
        return BoolFunc.from_table(shape, table)
    if kind == "anti_slab":
        _reject_params(params, {"axis"})
        axis = params.get("axis", 0)
        if not 0 <= axis < shape.d:
            raise ValueError(f"axis {axis} out of range")
        return _tabulate_or_wrap(shape, lambda x: 1 if 2 * x[axis] < shape.n else 0)
    if kind == "block_parity":
        _reject_params(params, set())
        return _tabulate_or_wrap(
            shape, lambda x: 1 if sum(2 * v // shape.n for v in x) % 2 == 0 else 0)
    if kind == "noisy_monotone":
        _reject_params(params, {"rho", "base"})
        rho = params.get("rho", 0.05)
        if not 0 <= rho <= 1:
            raise ValueError("rho must be in [0, 1]")
        base = params.get("base")
        if base is None:
            base = generate("random_monotone", shape, seed=rng.randrange(1 << 62))
        if base.shape != shape:
            raise ValueError("base shape mismatch")
        table = base.table()
        flipped = [b ^ 1 if rng.random() < rho else b for b in table]
        return BoolFunc.from_table(shape, flipped)
    raise ValueError(f"unknown generator kind {kind!r}")


def _reject_params(params: dict, allowed: set) -> None:
    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"unknown parameters {sorted(unknown)}")


def _check_table_capacity(shape: GridShape) -> None:
    if shape.size > DEFAULT_TABLE_CAPACITY:
        raise CapacityError(f"{shape.size} points exceed the dense-table capacity")


def _tabulate_or_wrap(shape: GridShape, pred: Callable[[Point], int]) -> BoolFunc:
    if shape.size <= TABULATE_THRESHOLD:
        return BoolFunc.from_table(
            shape, [pred(point_of(shape, i)) for i in range(shape.size)])
    return BoolFunc.from_predicate(shape, pred)


def _upward_close(shape: GridShape, table: list) -> None:
    # In-place closure: a point is 1 iff some seed point lies at or below it.
    stride = 1
    for _ in range(shape.d):
        period = stride * shape.n
        for base in range(0, shape.size, period):
            for off in range(base + stride, base + period):
                if table[off - stride]:
                    table[off] = 1
        stride = period


def save(f: BoolFunc, sink) -> None:
    """Write the binary function file (table-backed functions only).

    Layout: magic "AGF1", n and d as 8-byte little-endian unsigned ints,
    then ceil(n^d / 8) payload bytes; bit k of the payload (little-endian
    within each byte) is the value at linear index k.
    """
    if not f.is_table_backed():
        raise ValueError("only table-backed functions can be saved")
    table = f.table()
    payload = bytearray((len(table) + 7) // 8)
    for k, b in enumerate(table):
        if b:
            payload[k // 8] |= 1 << (k % 8)
    blob = MAGIC + f.shape.n.to_bytes(8, "little") + f.shape.d.to_bytes(8, "little") + bytes(payload)
    if isinstance(sink, (str, bytes)):
        with open(sink, "wb") as fh:
            fh.write(blob)
    else:
        sink.write(blob)


def load(source) -> BoolFunc:
    """Read a function file written by save(); strict about sizes and padding."""
    if isinstance(source, (str, bytes)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
    if len(data) < len(MAGIC) + 16:
        raise FormatError("truncated header")
    if data[:4] != MAGIC:
        raise FormatError(f"bad magic {data[:4]!r}")
    n = int.from_bytes(data[4:12], "little")
    d = int.from_bytes(data[12:20], "little")
    try:
        shape = GridShape(n, d)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    size = shape.size
    payload = data[20:]
    expected = (size + 7) // 8
    if len(payload) != expected:
        raise FormatError(f"payload has {len(payload)} bytes, expected {expected}")
    table = [(payload[k // 8] >> (k % 8)) & 1 for k in range(size)]
    for k in range(size, expected * 8):
        if (payload[k // 8] >> (k % 8)) & 1:
            raise FormatError("nonzero padding bits")
    return BoolFunc.from_table(shape, table)


def dumps(f: BoolFunc) -> bytes:
    buf = io.BytesIO()
    save(f, buf)
    return buf.getvalue()
