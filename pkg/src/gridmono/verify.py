"""The acceptance suite: every shipping criterion as a callable check.

Each check returns a CheckResult; tests/test_acceptance.py asserts them one
by one and the CLI `verify` subcommand runs the same list.  Shared sweeps
are cached per process so the distance and isoperimetry criteria pay for
the exhaustive enumerations once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import reports
from .errors import IntegrityError, NotGoodError
from .func import BoolFunc, generate, is_monotone
from .grid import GridShape, directed_distance, matching_ids
from .oracle import (
    brute_force_distance,
    distance_to_monotonicity,
    gamma_minus,
    influence_bound_check,
    isoperimetry_report,
    monotone_masks,
    optimal_matching,
)
from .reduce import lift, plan
from .streams import derive_rng, derive_seed
from .tester import (
    DEFAULT_CALIBRATION,
    amplified_test,
    detection_rate,
    exact_rejection_probability,
    repetitions,
    single_test,
)

DEFAULT_MASTER_SEED = 20240811

# Criterion 8 grid; eps is handed to the amplified tester as the design
# farness of both families (the calibration constant absorbs the slack).
PILOT_GRID = tuple((family, n, d)
                   for family in ("anti_slab", "block_parity")
                   for n in (4, 8) for d in (2, 4, 8))
PILOT_EPS = 0.5

# Frozen regression fixtures (criterion 3): exact per-shape minima of the
# three isoperimetry ratios over every eps-far function, as produced by the
# exhaustive sweep itself.  Recompute with `python -m gridmono.verify`.
FROZEN_RATIO_MINIMA: Dict[Tuple[int, int], Tuple[str, str, str]] = {
    (2, 2): ("1", "1", "1"),
    (2, 3): ("1", "1", "1"),
    (3, 2): ("1", "1", "1"),
    (4, 2): ("1", "1", "24/25"),
}


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str


# ----------------------------------------------------------------------
# shared caches

@dataclass(frozen=True)
class SweepRow:
    mask: int
    eps: Fraction
    brute: Fraction
    margulis: Optional[Fraction]
    edge_ratio: Optional[Fraction]
    vertex_ratio: Optional[Fraction]


_SWEEPS: Dict[Tuple[int, int], List[SweepRow]] = {}
_INSTANCES: Dict[int, list] = {}


def full_sweep(n: int, d: int) -> List[SweepRow]:
    """Every function on the (n, d) grid: distance both ways plus ratios."""
    key = (n, d)
    if key in _SWEEPS:
        return _SWEEPS[key]
    shape = GridShape(n, d)
    size = shape.size
    rows = []
    for mask in range(1 << size):
        f = BoolFunc.from_table(shape, [(mask >> k) & 1 for k in range(size)])
        report = isoperimetry_report(f)
        rows.append(SweepRow(
            mask,
            report.influence.eps,
            brute_force_distance(f),
            report.margulis_ratio,
            report.edge_ratio,
            report.vertex_ratio,
        ))
    _SWEEPS[key] = rows
    return rows


def _mask_function(shape: GridShape, mask: int) -> BoolFunc:
    return BoolFunc.from_table(shape, [(mask >> k) & 1 for k in range(shape.size)])


def decomposition_instances(master_seed: int) -> list:
    """(shape, mask, f, M*) for every eps-far function of the small shapes
    plus 1000 sampled eps-far functions at (4, 2)."""
    if master_seed in _INSTANCES:
        return _INSTANCES[master_seed]
    instances = []
    for n, d in ((2, 1), (2, 2), (4, 1)):
        shape = GridShape(n, d)
        for mask in range(1 << shape.size):
            f = _mask_function(shape, mask)
            mstar = optimal_matching(f)
            if not mstar.empty:
                instances.append((shape, mask, f, mstar))
    shape = GridShape(4, 2)
    rng = derive_rng(master_seed, "decomposition-sample")
    picked = 0
    while picked < 1000:
        mask = rng.randrange(1 << shape.size)
        f = _mask_function(shape, mask)
        mstar = optimal_matching(f)
        if mstar.empty:
            continue
        instances.append((shape, mask, f, mstar))
        picked += 1
    _INSTANCES[master_seed] = instances
    return instances


# ----------------------------------------------------------------------
# criterion 1: one-sided error

def check_one_sided(master_seed: int = DEFAULT_MASTER_SEED) -> CheckResult:
    families = ("monotone_threshold", "random_monotone")
    shapes = [(n, d) for n in (2, 4, 8) for d in range(1, 7)]
    instances_per_shape = 2
    per_instance = math.ceil(100_000 / (len(shapes) * instances_per_shape))
    rejections = 0
    calls = 0
    for family in families:
        for n, d in shapes:
            shape = GridShape(n, d)
            for inst in range(instances_per_shape):
                f = generate(family, shape,
                             seed=derive_seed(master_seed, f"onesided:{family}:{n}:{d}", inst))
                if not is_monotone(f):
                    return CheckResult(1, "one-sided", False,
                                       f"{family} generator produced a non-monotone table")
                rng = derive_rng(master_seed, f"onesided-run:{family}:{n}:{d}", inst)
                for _ in range(per_instance):
                    calls += 1
                    if single_test(f, rng).verdict == "reject":
                        rejections += 1
    exhaustive = 0
    for d in (1, 2):
        shape = GridShape(4, d)
        for mask in monotone_masks(shape):
            f = _mask_function(shape, mask)
            if exact_rejection_probability(f) != 0:
                return CheckResult(1, "one-sided", False,
                                   f"monotone mask {mask} on 4^{d} has nonzero reject probability")
            exhaustive += 1
    passed = rejections == 0
    return CheckResult(
        1, "one-sided", passed,
        f"{calls} sampled invocations, {rejections} rejections; "
        f"{exhaustive} monotone functions exhausted over the randomness space")


# ----------------------------------------------------------------------
# criterion 2: distance oracle equivalence

DISTANCE_SHAPES = ((2, 2), (2, 3), (3, 2), (4, 2))


def check_distance_equivalence() -> CheckResult:
    checked = 0
    for n, d in DISTANCE_SHAPES:
        for row in full_sweep(n, d):
            if row.eps != row.brute:
                return CheckResult(
                    2, "distance-equivalence", False,
                    f"mask {row.mask} on {n}^{d}: matching {row.eps} != brute {row.brute}")
            checked += 1
    return CheckResult(2, "distance-equivalence", True,
                       f"{checked} functions agree exactly across {len(DISTANCE_SHAPES)} shapes")


# ----------------------------------------------------------------------
# criterion 3: isoperimetry positivity and frozen regression minima

def sweep_minima(n: int, d: int) -> Tuple[Fraction, Fraction, Fraction]:
    mins = None
    for row in full_sweep(n, d):
        if row.margulis is None:
            continue
        vals = (row.margulis, row.edge_ratio, row.vertex_ratio)
        mins = vals if mins is None else tuple(map(min, mins, vals))
    return mins


def check_isoperimetry_regression() -> CheckResult:
    details = []
    for n, d in DISTANCE_SHAPES:
        for row in full_sweep(n, d):
            if row.margulis is None:
                continue
            if row.margulis <= 0 or row.edge_ratio <= 0 or row.vertex_ratio <= 0:
                return CheckResult(3, "isoperimetry-regression", False,
                                   f"nonpositive ratio at mask {row.mask} on {n}^{d}")
        mins = sweep_minima(n, d)
        frozen = FROZEN_RATIO_MINIMA.get((n, d))
        if frozen is None:
            return CheckResult(3, "isoperimetry-regression", False,
                               f"no frozen minima recorded for shape {n}x{d}")
        expected = tuple(Fraction(s) for s in frozen)
        if mins != expected:
            return CheckResult(3, "isoperimetry-regression", False,
                               f"shape {n}x{d}: minima {mins} != frozen {expected}")
        details.append(f"{n}x{d}: margulis>={mins[0]}")
    return CheckResult(3, "isoperimetry-regression", True, "; ".join(details))


# ----------------------------------------------------------------------
# criterion 4: decomposition + routing pipeline

def _violated_edge_on(f: BoolFunc, path: tuple) -> bool:
    return any(f.eval(u) == 1 and f.eval(v) == 0 for u, v in zip(path, path[1:]))


def check_decomposition_routing(master_seed: int = DEFAULT_MASTER_SEED) -> CheckResult:
    from .structure import (
        GridPoset,
        build_cover_graph,
        conflict_free_decompose,
        cover_is_layered,
        covers_disjoint,
        degree_monotonicity_check,
        layer_size_dichotomy,
        route_disjoint_paths,
    )

    posets: Dict[GridShape, GridPoset] = {}
    classes_checked = 0
    try:
        for shape, mask, f, mstar in decomposition_instances(master_seed):
            poset = posets.setdefault(shape, GridPoset(shape))
            gamma_count = len(gamma_minus(f).witness)
            by_dist: Dict[int, list] = {}
            for x, y in mstar.pairs:
                by_dist.setdefault(directed_distance(shape, x, y), []).append((x, y))
            for ell, pairs in sorted(by_dist.items()):
                parts = conflict_free_decompose(poset, pairs, ell)
                got_s = sorted(s for cp in parts for s in cp.S)
                got_t = sorted(t for cp in parts for t in cp.T)
                if got_s != sorted(x for x, _ in pairs) or got_t != sorted(y for _, y in pairs):
                    return CheckResult(4, "decomposition-routing", False,
                                       f"mask {mask} on {shape.n}^{shape.d}: endpoints not partitioned")
                covers = [build_cover_graph(poset, cp.S, cp.T, ell) for cp in parts]
                for cover, cp in zip(covers, parts):
                    if not cover_is_layered(cover):
                        return CheckResult(4, "decomposition-routing", False,
                                           f"mask {mask}: pair of size {len(cp.S)} not {ell}-good")
                    if not degree_monotonicity_check(cover):
                        return CheckResult(4, "decomposition-routing", False,
                                           f"mask {mask}: degree monotonicity broken")
                    if not layer_size_dichotomy(cover, len(cp.S)):
                        return CheckResult(4, "decomposition-routing", False,
                                           f"mask {mask}: no wide boundary layer")
                for a in range(len(covers)):
                    for b in range(a + 1, len(covers)):
                        if not covers_disjoint(covers[a], covers[b]):
                            return CheckResult(4, "decomposition-routing", False,
                                               f"mask {mask}: cover graphs intersect")
                seen_vertices: set = set()
                total_paths = 0
                for cp in parts:
                    paths = route_disjoint_paths(poset, cp)
                    if len(paths) != len(cp.S):
                        return CheckResult(4, "decomposition-routing", False,
                                           f"mask {mask}: {len(paths)} paths for {len(cp.S)} sources")
                    for path in paths:
                        if seen_vertices.intersection(path):
                            return CheckResult(4, "decomposition-routing", False,
                                               f"mask {mask}: routed paths share a vertex")
                        seen_vertices.update(path)
                        if not _violated_edge_on(f, path):
                            return CheckResult(4, "decomposition-routing", False,
                                               f"mask {mask}: a routed path avoids every violated edge")
                    total_paths += len(paths)
                if total_paths != len(pairs) or total_paths > gamma_count:
                    return CheckResult(4, "decomposition-routing", False,
                                       f"mask {mask}: {total_paths} paths vs |M*_i|={len(pairs)}, "
                                       f"gamma count {gamma_count}")
                classes_checked += 1
    except (IntegrityError, NotGoodError) as exc:
        return CheckResult(4, "decomposition-routing", False, f"integrity failure: {exc}")
    n_inst = len(decomposition_instances(master_seed))
    return CheckResult(4, "decomposition-routing", True,
                       f"{n_inst} eps-far instances, {classes_checked} distance classes verified")


# ----------------------------------------------------------------------
# criterion 5: crossing counts and alternating sequences

def check_alternating_counts(master_seed: int = DEFAULT_MASTER_SEED) -> CheckResult:
    from .structure import alternating_summary

    walks = 0
    try:
        for shape, mask, f, mstar in decomposition_instances(master_seed):
            cross_total = 0
            for mid in matching_ids(shape):
                classes, sequences, violations = alternating_summary(mstar.pairs, mid, f)
                cross_total += len(classes.cross)
                need = math.ceil(len(classes.cross) / 2)
                if len(violations) < need:
                    return CheckResult(
                        5, "alternating-counts", False,
                        f"mask {mask} on {shape.n}^{shape.d}, matching {mid}: "
                        f"{len(violations)} violations < {need}")
                walks += len(sequences)
            dist_total = sum(directed_distance(shape, x, y) for x, y in mstar.pairs)
            if cross_total != dist_total:
                return CheckResult(5, "alternating-counts", False,
                                   f"mask {mask}: crossings {cross_total} != distance sum {dist_total}")
    except IntegrityError as exc:
        return CheckResult(5, "alternating-counts", False, f"walk integrity failure: {exc}")
    return CheckResult(5, "alternating-counts", True,
                       f"{walks} alternating walks, counting identity exact on every instance")


# ----------------------------------------------------------------------
# criterion 6: fourier suite

def check_fourier_suite(master_seed: int = DEFAULT_MASTER_SEED) -> CheckResult:
    import numpy as np

    from .fourier import line_delta_report, sort_comparisons, transform

    shape = GridShape(8, 3)
    rng = derive_rng(master_seed, "parseval")
    worst = 0.0
    for _ in range(1000):
        values = [1 if rng.getrandbits(1) else -1 for _ in range(shape.size)]
        spectrum = transform(shape, values)
        worst = max(worst, abs(float(np.sum(spectrum.coeffs ** 2)) - 1.0))
    if worst > 1e-12:
        return CheckResult(6, "fourier-suite", False, f"Parseval defect {worst}")

    for n in (8, 16):
        line = GridShape(n, 1)
        for mask in range(1 << n):
            g = _mask_function(line, mask)
            try:
                rep = line_delta_report(g)
                cmp_rep = sort_comparisons(g)
            except IntegrityError as exc:
                return CheckResult(6, "fourier-suite", False,
                                   f"coefficient routes disagree on n={n} mask {mask}: {exc}")
            if not rep.inequality_holds:
                return CheckResult(6, "fourier-suite", False,
                                   f"line bound fails on n={n} mask {mask}")
            if not cmp_rep.delta_sorted_ge or not cmp_rep.final_claim_holds:
                return CheckResult(6, "fourier-suite", False,
                                   f"sorting claim fails on n={n} mask {mask}")

    shape42 = GridShape(4, 2)
    applicable = 0
    for mask in range(1 << shape42.size):
        chk = influence_bound_check(_mask_function(shape42, mask))
        if chk.applicable:
            applicable += 1
            if not chk.holds:
                return CheckResult(6, "fourier-suite", False,
                                   f"influence bound fails at mask {mask} on 4^2")
    return CheckResult(
        6, "fourier-suite", True,
        f"Parseval defect {worst:.2e}; 256+65536 line functions pass; "
        f"{applicable} applicable functions satisfy the influence bound")


# ----------------------------------------------------------------------
# criterion 7: reduction

def check_reduction(master_seed: int = DEFAULT_MASTER_SEED) -> CheckResult:
    shapes = ((3, 1), (3, 2), (5, 1))
    preserved = 0
    for n, d in shapes:
        shape = GridShape(n, d)
        p = plan(n, d)
        if shape.size <= 20:
            for mask in monotone_masks(shape):
                g = lift(p, _mask_function(shape, mask))
                if not is_monotone(g):
                    return CheckResult(7, "reduction", False,
                                       f"monotone mask {mask} on {n}^{d} lifts non-monotone")
                preserved += 1
    compared = 0
    for n, d, exhaustive in ((3, 1, True), (3, 2, False), (5, 1, False)):
        shape = GridShape(n, d)
        p = plan(n, d)
        if exhaustive:
            masks = list(range(1 << shape.size))
        else:
            rng = derive_rng(master_seed, f"reduce:{n}:{d}")
            masks = [rng.randrange(1 << shape.size) for _ in range(1000)]
        for mask in masks:
            f = _mask_function(shape, mask)
            eps_f = distance_to_monotonicity(f).eps
            eps_g = distance_to_monotonicity(lift(p, f)).eps
            if eps_g < Fraction(eps_f, 6):
                return CheckResult(7, "reduction", False,
                                   f"mask {mask} on {n}^{d}: lifted distance {eps_g} < {eps_f}/6")
            compared += 1
    shape = GridShape(3, 2)
    f = generate("uniform_random", shape, seed=derive_seed(master_seed, "reduce-queries"))
    g = lift(plan(3, 2), f)
    before = f.queries
    big = GridShape(plan(3, 2).N, 2)
    rng = derive_rng(master_seed, "reduce-query-points")
    k = 50
    for _ in range(k):
        g.eval((rng.randrange(big.n), rng.randrange(big.n)))
    if f.queries - before != k or g.queries != k:
        return CheckResult(7, "reduction", False, "query forwarding is not 1:1")
    return CheckResult(7, "reduction", True,
                       f"{preserved} monotone lifts exact; {compared} distance comparisons; "
                       f"query forwarding 1:1 over {k} probes")


# ----------------------------------------------------------------------
# criterion 8: calibrated detection

def derive_calibration(master_seed: int = DEFAULT_MASTER_SEED,
                       pilot_trials: int = 4000) -> float:
    """Recompute the frozen calibration constant from the pilot sweep.

    For each pilot configuration, the per-invocation rejection rate's Wilson
    lower bound dictates how many repetitions push one run to >= 0.9
    rejection probability; the constant is the largest implied multiple of
    the repetition formula, padded 25%.
    """
    worst = 0.0
    for family, n, d in PILOT_GRID:
        shape = GridShape(n, d)
        f = generate(family, shape, seed=derive_seed(master_seed, f"pilot-fn:{family}:{n}:{d}"))
        rate = detection_rate(f, pilot_trials,
                              derive_rng(master_seed, f"pilot:{family}:{n}:{d}"))
        if rate.wilson_low <= 0:
            raise IntegrityError(f"pilot rate not separated from zero for {family} {n}x{d}")
        needed = math.log(10.0) / -math.log1p(-rate.wilson_low)
        base = repetitions(n, d, PILOT_EPS, 1.0)
        worst = max(worst, needed / base)
    return round(worst * 1.25, 4)


def check_calibrated_detection(master_seed: int = DEFAULT_MASTER_SEED) -> CheckResult:
    runs = 200
    need = math.ceil(2 * runs / 3)
    trend: Dict[str, list] = {}
    for family, n, d in PILOT_GRID:
        shape = GridShape(n, d)
        f = generate(family, shape, seed=derive_seed(master_seed, f"pilot-fn:{family}:{n}:{d}"))
        rejected = 0
        for k in range(runs):
            verdict = amplified_test(f, PILOT_EPS, DEFAULT_CALIBRATION,
                                     derive_rng(master_seed, f"amplified:{family}:{n}:{d}", k))
            if not verdict.accepted:
                rejected += 1
        if rejected < need:
            return CheckResult(8, "calibrated-detection", False,
                               f"{family} {n}x{d}: only {rejected}/{runs} runs rejected")
        rate = detection_rate(f, 2000, derive_rng(master_seed, f"rate:{family}:{n}:{d}"))
        if rate.wilson_low <= 0:
            return CheckResult(8, "calibrated-detection", False,
                               f"{family} {n}x{d}: Wilson lower bound not above zero")
        trend.setdefault(f"{family} n={n}", []).append((d, rate.estimate))
    trend_text = "; ".join(
        f"{key}: " + " ".join(f"d={d}:{est:.4f}" for d, est in sorted(vals))
        for key, vals in sorted(trend.items()))
    return CheckResult(8, "calibrated-detection", True,
                       f"calibration {DEFAULT_CALIBRATION}; all 12 configs reject >= {need}/{runs}; "
                       f"single-shot rates for inspection: {trend_text}")


# ----------------------------------------------------------------------
# criterion 9: determinism

def check_determinism(master_seed: int = DEFAULT_MASTER_SEED) -> CheckResult:
    shapes = [(4, 1), (4, 2)]
    fams = ["anti_slab", "block_parity"]
    a = reports.render_report(reports.RATE_HEADER,
                              reports.rate_rows(shapes, fams, 300, master_seed, workers=1))
    b = reports.render_report(reports.RATE_HEADER,
                              reports.rate_rows(shapes, fams, 300, master_seed, workers=3))
    c = reports.render_report(reports.RATE_HEADER,
                              reports.rate_rows(shapes, fams, 300, master_seed, workers=1))
    if not (a == b == c):
        return CheckResult(9, "determinism", False, "rate sweep bytes differ across runs/workers")
    i1 = reports.render_report(reports.ISO_HEADER,
                               reports.isoperimetry_rows([(4, 1), (2, 2)], master_seed))
    i2 = reports.render_report(reports.ISO_HEADER,
                               reports.isoperimetry_rows([(4, 1), (2, 2)], master_seed))
    if i1 != i2:
        return CheckResult(9, "determinism", False, "isoperimetry sweep bytes differ across runs")
    p1 = reports.render_report(
        reports.PERSISTENCE_HEADER,
        reports.persistence_rows([(8, 2)], ["anti_slab"], [1, 2], 50, 40, master_seed, workers=1))
    p2 = reports.render_report(
        reports.PERSISTENCE_HEADER,
        reports.persistence_rows([(8, 2)], ["anti_slab"], [1, 2], 50, 40, master_seed, workers=4))
    if p1 != p2:
        return CheckResult(9, "determinism", False, "persistence sweep bytes differ across workers")
    return CheckResult(9, "determinism", True,
                       f"rate/isoperimetry/persistence reports byte-identical "
                       f"({len(a.splitlines()) - 1} + {len(i1.splitlines()) - 1} + "
                       f"{len(p1.splitlines()) - 1} rows)")


# ----------------------------------------------------------------------

def run_all(master_seed: int = DEFAULT_MASTER_SEED) -> List[CheckResult]:
    return [
        check_one_sided(master_seed),
        check_distance_equivalence(),
        check_isoperimetry_regression(),
        check_decomposition_routing(master_seed),
        check_alternating_counts(master_seed),
        check_fourier_suite(master_seed),
        check_reduction(master_seed),
        check_calibrated_detection(master_seed),
        check_determinism(master_seed),
    ]


# ----------------------------------------------------------------------
# CLI helpers

def structural_summary(f: BoolFunc) -> List[str]:
    """Per-distance-class decomposition and routing summary lines."""
    from .structure import GridPoset, conflict_free_decompose, route_disjoint_paths

    shape = f.shape
    mstar = optimal_matching(f)
    if mstar.empty:
        return ["function is monotone: empty violation matching"]
    poset = GridPoset(shape)
    lines = [f"|M*|={len(mstar.pairs)} r={mstar.r} psi={mstar.psi}"]
    by_dist: Dict[int, list] = {}
    for x, y in mstar.pairs:
        by_dist.setdefault(directed_distance(shape, x, y), []).append((x, y))
    for ell, pairs in sorted(by_dist.items()):
        parts = conflict_free_decompose(poset, pairs, ell)
        paths = sum(len(route_disjoint_paths(poset, cp)) for cp in parts)
        lines.append(f"i={ell}: |M*_i|={len(pairs)} good_pairs={len(parts)} disjoint_paths={paths}")
    return lines


def fourier_spot_checks(line_n: int, tables: int, master_seed: int):
    """Parseval, transform self-inverse, and the exhaustive line sweep."""
    import numpy as np

    from .fourier import inverse_transform, line_delta_report, sort_comparisons, transform

    lines = []
    ok = True
    shape = GridShape(8, 3)
    rng = derive_rng(master_seed, "cli-parseval")
    worst = 0.0
    worst_inv = 0.0
    for _ in range(tables):
        values = np.array([1.0 if rng.getrandbits(1) else -1.0 for _ in range(shape.size)])
        spectrum = transform(shape, values)
        worst = max(worst, abs(float(np.sum(spectrum.coeffs ** 2)) - 1.0))
        worst_inv = max(worst_inv, float(np.max(np.abs(inverse_transform(spectrum) - values))))
    lines.append(f"parseval defect {worst:.3e} over {tables} tables (tolerance 1e-12)")
    lines.append(f"inverse-transform defect {worst_inv:.3e}")
    ok &= worst <= 1e-12 and worst_inv <= 1e-9
    line = GridShape(line_n, 1)
    bad = 0
    for mask in range(1 << line.size):
        g = _mask_function(line, mask)
        rep = line_delta_report(g)
        cmp_rep = sort_comparisons(g)
        if not (rep.inequality_holds and cmp_rep.delta_sorted_ge and cmp_rep.final_claim_holds):
            bad += 1
    lines.append(f"line sweep n={line_n}: {bad} failures out of {1 << line.size}")
    ok &= bad == 0
    return ok, lines


def _main() -> None:
    for n, d in DISTANCE_SHAPES:
        mins = sweep_minima(n, d)
        print(f"({n}, {d}): (\"{mins[0]}\", \"{mins[1]}\", \"{mins[2]}\"),")
    print("calibration:", derive_calibration())


if __name__ == "__main__":
    _main()
