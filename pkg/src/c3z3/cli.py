"""Command line front end.

Exit codes: 0 success, 1 mismatch or inconsistency, 2 usage error.
The default cache lives in $C3Z3_CACHE_DIR (or ~/.cache/c3z3).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from .assembler import hodge_from_invariant
from .errors import C3Z3Error
from .geometry import rank_e_omega, space_dim, space_nonempty
from .pipeline import compute, pde_failures, solved_level, verify
from .relations.pde import PDES
from .solver import levels_for, solve_level
from .store import HodgeStore, InvariantKey
from .wdvv import wdvv_residuals

log = logging.getLogger("c3z3")

CACHE_ENV = "C3Z3_CACHE_DIR"


def default_cache() -> Path:
    base = os.environ.get(CACHE_ENV)
    root = Path(base) if base else Path.home() / ".cache" / "c3z3"
    return root / "cache.json"


def _load(path: Path) -> HodgeStore:
    if not path.exists():
        return HodgeStore()
    return HodgeStore.load(path)


def _ints(text: str, count: int) -> List[int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated integers, got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _weights(text: str) -> List[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected T1,T2,T3")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_compute(args) -> int:
    path = Path(args.cache) if args.cache else default_cache()
    store = _load(path)
    start = time.perf_counter()
    compute(args.max_insertions, store, threads=args.threads)
    store.save(path)
    print(f"computed invariants through N={args.max_insertions} in {time.perf_counter() - start:.2f}s -> {path}")
    return 0


def cmd_verify(args) -> int:
    path = Path(args.cache) if args.cache else default_cache()
    if not path.exists():
        print(f"no cache at {path}", file=sys.stderr)
        return 1
    report = verify(HodgeStore.load(path))
    for w in report.warnings:
        print(f"warning: {w}")
    print(f"reference entries checked: {report.golden_checked}, not cached: {report.golden_skipped}")
    for f in report.failures:
        print(f"FAIL {f}")
    print("OK" if report.ok else f"{len(report.failures)} failure(s)")
    return 0 if report.ok else 1


def cmd_hodge(args) -> int:
    n1, n2 = args.space
    if not space_nonempty(n1, n2) or n1 + n2 < 3:
        print(f"A({n1},{n2}) is empty or unstable", file=sys.stderr)
        return 2
    path = Path(args.cache) if args.cache else default_cache()
    store = _load(path)
    key = InvariantKey(0, n1, n2)
    if key not in store.invariants:
        compute(max(n1 + n2, 3), store)
        store.save(path)
    table = hodge_from_invariant(store.invariants[key], n1, n2)
    r, dim = rank_e_omega(n1, n2), space_dim(n1, n2)
    if args.lam is not None:
        lam = tuple(sorted(args.lam, reverse=True))
        if sum(lam) != dim or lam[0] > r or lam[2] < 0:
            print("0")
        else:
            print(table.get(lam, Fraction(0)))
        return 0
    print(f"A({n1},{n2}): dim {dim}, rank {r}")
    for lam, val in sorted(table.items(), reverse=True):
        print(f"l{lam[0]} l{lam[1]} l{lam[2]}  {val}")
    return 0


def _invariant_rows(store: HodgeStore, t):
    for key, poly in sorted(store.invariants.items(), key=lambda kv: (kv[0].total, kv[0].n2, kv[0].n0)):
        if key.n0:
            continue
        yield key, poly, (poly.evaluate(*t) if t is not None else None)


def cmd_export(args) -> int:
    path = Path(args.cache) if args.cache else default_cache()
    if not path.exists():
        print(f"no cache at {path}", file=sys.stderr)
        return 1
    store = HodgeStore.load(path)
    buf = io.StringIO()
    if args.table == "hodge":
        rows = sorted(store.threepart.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1], kv[0][2]))
        if args.format == "json":
            data = [{"n1": n1, "n2": n2, "lambda": list(lam), "value": str(v)} for (n1, n2, lam), v in rows]
            buf.write(json.dumps(data, indent=1) + "\n")
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["n1", "n2", "i", "j", "k", "value"])
            for (n1, n2, lam), v in rows:
                w.writerow([n1, n2, *lam, str(v)])
    elif args.format == "json":
        if args.t is None:
            buf.write(store.dumps())
        else:
            data = [{"n1": k.n1, "n2": k.n2, "value": str(v)} for k, _, v in _invariant_rows(store, args.t)]
            buf.write(json.dumps(data, indent=1) + "\n")
    else:
        t = args.t if args.t is not None else [Fraction(1)] * 3
        grid = {}
        for key, _, v in _invariant_rows(store, t):
            grid.setdefault(key.total, {})[key.n2 // 3] = v
        width = max((max(cols) for cols in grid.values()), default=-1) + 1
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N"] + [f"n2//3={c}" for c in range(width)])
        for total in sorted(grid):
            w.writerow([total] + [str(grid[total][c]) if c in grid[total] else "" for c in range(width)])
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_pde_check(args) -> int:
    m = args.order
    level = max((lv for p in PDES.values() if (lv := p.level_of_order(m)) is not None), default=0)
    level = max(level, levels_for(m + 3))
    store = HodgeStore()
    store.seed_three_point()
    for k in range(1, level + 1):
        solve_level(store, k)
    compute(m + 3, store)
    bad = pde_failures(store, solved_level(store), max_order=m)
    bad += [f"WDVV x1^{a} x2^{b}: {r}" for a, b, r in wdvv_residuals(store, m + 3)]
    for line in bad:
        print(f"FAIL {line}")
    print(f"nine equations through x-order {m}: " + ("all residuals vanish" if not bad else f"{len(bad)} nonzero"))
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="c3z3", description="Genus-0 invariants of [C^3/Z_3] and Z_3-Hodge integrals")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute invariants up to a number of insertions")
    p.add_argument("--max-insertions", type=int, required=True)
    p.add_argument("--cache")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check a cache against the reference table and all consistency relations")
    p.add_argument("--cache")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hodge", help="three-part Hodge integrals on one space")
    p.add_argument("--space", type=lambda s: _ints(s, 2), required=True, metavar="N1,N2")
    p.add_argument("--lambda", dest="lam", type=lambda s: _ints(s, 3), metavar="I,J,K")
    p.add_argument("--cache")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("export", help="write cached values as csv or json")
    p.add_argument("--format", choices=("csv", "json"), required=True)
    p.add_argument("--t", type=_weights, metavar="T1,T2,T3")
    p.add_argument("--table", choices=("invariants", "hodge"), default="invariants")
    p.add_argument("--out")
    p.add_argument("--cache")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("pde-check", help="solve and check every relation through an x-order")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_pde_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if getattr(args, "max_insertions", 3) < 3:
        parser.error("--max-insertions must be at least 3")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be positive")
    if getattr(args, "order", 0) < 0:
        parser.error("--order must be nonnegative")
    try:
        return args.func(args)
    except C3Z3Error as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
