"""Batch experiment harness.

Subcommands run the tester, the exact oracles, the structural verification
pipeline, and the full acceptance suite, emitting plain CSV reports.  Exit
codes: 0 success/accept, 1 reject, 2 usage error, 3 capacity error,
4 integrity or verification failure.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from typing import List, Optional

from . import reports
from .errors import CapacityError, FormatError, IntegrityError, NotGoodError
from .func import BoolFunc, generate, load
from .grid import GridShape
from .streams import derive_rng
from .tester import DEFAULT_CALIBRATION, amplified_test

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_INTEGRITY = 4

FAMILIES = ("uniform_random", "monotone_threshold", "random_monotone",
            "anti_slab", "block_parity", "noisy_monotone")


def _parse_shapes(text: str) -> List[tuple]:
    # "4x1,4x2,8x2" -> [(4,1), (4,2), (8,2)]
    shapes = []
    for part in text.split(","):
        try:
            n, d = part.lower().split("x")
            shapes.append((int(n), int(d)))
        except ValueError as exc:
            raise ValueError(f"bad shape {part!r}, expected NxD") from exc
    return shapes


def _parse_families(text: str) -> List[str]:
    fams = [p.strip() for p in text.split(",") if p.strip()]
    for fam in fams:
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
    return fams


def _parse_ints(text: str) -> List[int]:
    return [int(p) for p in text.split(",") if p.strip()]


def _load_function(args) -> BoolFunc:
    if getattr(args, "load", None):
        return load(args.load)
    if args.n is None or args.d is None:
        raise ValueError("need --load or both --n and --d")
    shape = GridShape(args.n, args.d)
    return generate(args.family, shape, seed=args.seed)


def _apply_config(args: argparse.Namespace, parser) -> None:
    """Fill unset options from the [subcommand] section of --config."""
    if not getattr(args, "config", None):
        return
    cp = configparser.ConfigParser()
    read = cp.read(args.config)
    if not read:
        parser.error(f"cannot read config file {args.config}")
    section = args.command
    if not cp.has_section(section):
        parser.error(f"config file has no [{section}] section")
    actions = {a.dest: a for a in parser._all_actions()}
    known = {k for k in vars(args) if k not in ("command", "config", "_explicit")}
    for key, value in cp.items(section):
        if key not in known:
            parser.error(f"unknown config key {key!r} in [{section}]")
        if key in args._explicit:
            continue  # flags override the file
        action = actions.get(key)
        if action is not None and action.type is not None:
            try:
                value = action.type(value)
            except ValueError:
                parser.error(f"bad value {value!r} for config key {key!r}")
        elif isinstance(getattr(args, key), bool):
            value = value.lower() in ("1", "true", "yes")
        setattr(args, key, value)


class _TrackingParser(argparse.ArgumentParser):
    """Remembers which destinations were set explicitly on the command line."""

    def parse_args(self, argv=None, namespace=None):
        args = super().parse_args(argv, namespace)
        explicit = set()
        argv = sys.argv[1:] if argv is None else list(argv)
        for action in self._all_actions():
            for opt in action.option_strings:
                if any(tok == opt or tok.startswith(opt + "=") for tok in argv):
                    explicit.add(action.dest)
        args._explicit = explicit
        return args

    def _all_actions(self):
        actions = list(self._actions)
        for action in self._actions:
            if isinstance(action, argparse._SubParsersAction):
                for sub in action.choices.values():
                    actions.extend(sub._actions)
        return actions


def build_parser() -> _TrackingParser:
    parser = _TrackingParser(prog="gridmono", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, load_opt=True):
        p.add_argument("--config", help="INI file with a [subcommand] section")
        p.add_argument("--seed", type=int, default=0, help="master seed")
        if load_opt:
            p.add_argument("--load", help="function file to test")
            p.add_argument("--family", choices=FAMILIES, default="anti_slab")
            p.add_argument("--n", type=int, default=None)
            p.add_argument("--d", type=int, default=None)

    p = sub.add_parser("test", help="run the amplified tester on one function")
    common(p)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--calibration", type=float, default=DEFAULT_CALIBRATION)

    p = sub.add_parser("rate", help="detection-rate sweep -> CSV")
    common(p, load_opt=False)
    p.add_argument("--shapes", default="4x1,4x2,8x2")
    p.add_argument("--families", default="anti_slab,block_parity")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="rate.csv")

    p = sub.add_parser("isoperimetry", help="exact isoperimetry sweep -> CSV")
    common(p, load_opt=False)
    p.add_argument("--shapes", default="4x1,2x2")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--out", default="isoperimetry.csv")

    p = sub.add_parser("persistence", help="persistence sweep -> CSV")
    common(p, load_opt=False)
    p.add_argument("--shapes", default="8x2")
    p.add_argument("--families", default="anti_slab,noisy_monotone")
    p.add_argument("--taus", default="1,2,4")
    p.add_argument("--outer", type=int, default=400)
    p.add_argument("--inner", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="persistence.csv")

    p = sub.add_parser("structure", help="decomposition + routing verification")
    common(p)

    p = sub.add_parser("fourier", help="transform and line-inequality checks")
    common(p, load_opt=False)
    p.add_argument("--line-n", type=int, default=8, dest="line_n")
    p.add_argument("--tables", type=int, default=100)

    p = sub.add_parser("reduce", help="plan, lift, and compare distances")
    common(p)

    p = sub.add_parser("verify", help="run the full acceptance suite")
    common(p, load_opt=False)
    return parser


def cmd_test(args) -> int:
    f = _load_function(args)
    verdict = amplified_test(f, args.eps, args.calibration,
                             derive_rng(args.seed, "cli-test"))
    print(f"verdict={'ACCEPT' if verdict.accepted else 'REJECT'} "
          f"invocations={verdict.invocations} queries={verdict.total_queries}")
    return EXIT_OK if verdict.accepted else EXIT_REJECT


def cmd_rate(args) -> int:
    shapes = _parse_shapes(args.shapes)
    families = _parse_families(args.families)
    rows = reports.rate_rows(shapes, families, args.trials, args.seed, args.workers)
    reports.write_report(args.out, reports.RATE_HEADER, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_isoperimetry(args) -> int:
    shapes = _parse_shapes(args.shapes)
    rows = reports.isoperimetry_rows(shapes, args.seed, samples=args.samples)
    reports.write_report(args.out, reports.ISO_HEADER, rows)
    minima = {}
    for row in rows:
        parts = row.split(",")
        key = (parts[0], parts[1])
        vals = tuple(float(v) for v in parts[8:11])
        cur = minima.get(key)
        minima[key] = vals if cur is None else tuple(map(min, cur, vals))
    for (n, d), (mar, edg, ver) in sorted(minima.items()):
        print(f"shape {n}x{d}: min margulis={mar:.6g} min edge={edg:.6g} min vertex={ver:.6g}")
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_persistence(args) -> int:
    shapes = _parse_shapes(args.shapes)
    families = _parse_families(args.families)
    taus = _parse_ints(args.taus)
    rows = reports.persistence_rows(shapes, families, taus, args.outer,
                                    args.inner, args.seed, args.workers)
    reports.write_report(args.out, reports.PERSISTENCE_HEADER, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_structure(args) -> int:
    from .verify import structural_summary

    f = _load_function(args)
    lines = structural_summary(f)
    for line in lines:
        print(line)
    return EXIT_OK


def cmd_fourier(args) -> int:
    from .verify import fourier_spot_checks

    ok, lines = fourier_spot_checks(args.line_n, args.tables, args.seed)
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_INTEGRITY


def cmd_reduce(args) -> int:
    from fractions import Fraction

    from .oracle import distance_to_monotonicity
    from .reduce import lift, plan

    f = _load_function(args)
    shape = f.shape
    p = plan(shape.n, shape.d)
    print(f"plan: i={p.i} N={p.N} m={p.m} blocks={p.block_sizes}")
    g = lift(p, f)
    eps_f = distance_to_monotonicity(f).eps
    eps_g = distance_to_monotonicity(g).eps
    print(f"distance(f)={eps_f} distance(lift)={eps_g} sixth={Fraction(eps_f, 6)}")
    if eps_g < Fraction(eps_f, 6):
        print("FAIL: lifted distance below a sixth of the original")
        return EXIT_INTEGRITY
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all(args.seed)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} criterion-{res.criterion} {res.name}: {res.detail}")
        if not res.passed:
            failed += 1
    return EXIT_OK if failed == 0 else EXIT_INTEGRITY


COMMANDS = {
    "test": cmd_test,
    "rate": cmd_rate,
    "isoperimetry": cmd_isoperimetry,
    "persistence": cmd_persistence,
    "structure": cmd_structure,
    "fourier": cmd_fourier,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (ValueError, FormatError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (IntegrityError, NotGoodError) as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY


if __name__ == "__main__":
    sys.exit(main())
