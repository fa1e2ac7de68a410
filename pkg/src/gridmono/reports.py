"""Deterministic sweep reports.

Every trial draws from its own stream derived from (master seed, experiment
id, trial index), and rows are emitted in a fixed order, so a report is a
pure function of its configuration: identical bytes for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, Tuple

from .errors import CapacityError
from .func import BoolFunc, generate
from .grid import GridShape
from .oracle import (
    ORACLE_CAPACITY,
    distance_to_monotonicity,
    isoperimetry_report,
    violated_aug_edges,
)
from .streams import derive_rng, derive_seed
from .tester import persistence_fraction, single_test, wilson_interval

RATE_HEADER = "n,d,family,eps_true,trials,rejections,rate,wilson_lo,wilson_hi"
ISO_HEADER = "n,d,function_id,eps,I,I_minus,gamma_minus,r,margulis_ratio,edge_ratio,vertex_ratio"
PERSISTENCE_HEADER = "n,d,tau,family,nonpersistent_fraction,reference_bound"


def _fmt(x) -> str:
    return repr(float(x))


def run_trials(trials: int, workers: int, fn: Callable[[int], bool]) -> int:
    """Count successes of fn over trial indices; order-independent."""
    if workers <= 1:
        return sum(1 for k in range(trials) if fn(k))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(1 for hit in pool.map(fn, range(trials)) if hit)


def make_function(family: str, shape: GridShape, master_seed: int, tag: str) -> BoolFunc:
    return generate(family, shape, seed=derive_seed(master_seed, f"fn:{tag}:{family}:{shape.n}:{shape.d}"))


def rate_rows(shapes: Sequence[Tuple[int, int]], families: Sequence[str], trials: int,
              master_seed: int, workers: int = 1) -> List[str]:
    rows = []
    for n, d in shapes:
        shape = GridShape(n, d)
        for family in families:
            f = make_function(family, shape, master_seed, "rate")
            eps_true = float(distance_to_monotonicity(f).eps)
            exp_id = f"rate:{family}:{n}:{d}"

            def trial(k: int, f=f, exp_id=exp_id) -> bool:
                return single_test(f, derive_rng(master_seed, exp_id, k)).verdict == "reject"

            rejections = run_trials(trials, workers, trial)
            lo, hi = wilson_interval(rejections, trials)
            rows.append(",".join([
                str(n), str(d), family, _fmt(eps_true), str(trials), str(rejections),
                _fmt(rejections / trials), _fmt(lo), _fmt(hi)]))
    return rows


def isoperimetry_rows(shapes: Sequence[Tuple[int, int]], master_seed: int,
                      exhaustive_limit: int = 16, samples: int = 1000) -> List[str]:
    """One row per eps-far function: exhaustive when 2^(n^d) is small, sampled above."""
    rows = []
    for n, d in shapes:
        shape = GridShape(n, d)
        size = shape.size
        if size > ORACLE_CAPACITY:
            raise CapacityError(f"{size} points exceed the exact-oracle capacity")
        if size <= exhaustive_limit:
            masks = range(1 << size)
        else:
            rng = derive_rng(master_seed, f"iso:{n}:{d}")
            masks = [rng.randrange(1 << size) for _ in range(samples)]
        for mask in masks:
            f = BoolFunc.from_table(shape, [(mask >> k) & 1 for k in range(size)])
            report = isoperimetry_report(f)
            if report.margulis_ratio is None:
                continue
            inf = report.influence
            rows.append(",".join([
                str(n), str(d), str(mask), _fmt(inf.eps), _fmt(inf.I), _fmt(inf.I_minus),
                _fmt(inf.gamma_minus), _fmt(inf.r), _fmt(report.margulis_ratio),
                _fmt(report.edge_ratio), _fmt(report.vertex_ratio)]))
    return rows


def persistence_rows(shapes: Sequence[Tuple[int, int]], families: Sequence[str],
                     taus: Sequence[int], outer_samples: int, inner_samples: int,
                     master_seed: int, workers: int = 1) -> List[str]:
    rows = []
    for n, d in shapes:
        shape = GridShape(n, d)
        for family in families:
            f = make_function(family, shape, master_seed, "persistence")
            s_minus, s_plus = violated_aug_edges(f)
            total_influence = (len(s_minus) + len(s_plus)) / shape.size
            for tau in taus:
                exp_id = f"persistence:{family}:{n}:{d}:{tau}"

                def trial(k: int, f=f, tau=tau, exp_id=exp_id) -> bool:
                    rng = derive_rng(master_seed, exp_id, k)
                    return persistence_fraction(f, tau, 1, inner_samples, rng) > 0

                non_persistent = run_trials(outer_samples, workers, trial)
                reference = tau * total_influence / (d * math.log2(n))
                rows.append(",".join([
                    str(n), str(d), str(tau), family,
                    _fmt(non_persistent / outer_samples), _fmt(reference)]))
    return rows


def write_report(path: str, header: str, rows: Sequence[str]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")


def render_report(header: str, rows: Sequence[str]) -> str:
    return "\n".join([header, *rows]) + "\n"
