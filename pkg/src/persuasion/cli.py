"""Command-line entry point.

Exit codes: 0 solvable / all checks pass, 1 not solvable, 2 invalid input or
cap exceeded, 3 a reduction check failed (or a bench run disagreed).
Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .core import parse_rational
from .errors import PersuasionError
from .formats import (
    parse_eci,
    parse_ppi,
    render_cover_verdict,
    render_eci,
    render_persuasion_verdict,
    render_ppi,
    render_roles,
)
from .generate import GenConfig, gen_eci, gen_ppi
from .reduction import reduce, verify_reduction
from .solvers import (
    brute_force_persuasion,
    exact_cover_brute,
    exact_cover_dlx,
    strong_persuasion_general,
)

EXIT_OK, EXIT_NO, EXIT_INVALID, EXIT_VIOLATION = 0, 1, 2, 3


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve_ppi(args) -> int:
    inst = parse_ppi(Path(args.file).read_text())
    if args.strong:
        verdict = strong_persuasion_general(inst)
    else:
        verdict = brute_force_persuasion(inst, cap=args.cap, workers=args.workers)
    sys.stdout.write(render_persuasion_verdict(inst, verdict))
    return EXIT_OK if verdict.solvable else EXIT_NO


def cmd_solve_eci(args) -> int:
    eci = parse_eci(Path(args.file).read_text())
    if args.engine == "brute":
        verdict = exact_cover_brute(eci, cap=args.cap)
    else:
        verdict = exact_cover_dlx(eci, count_all=args.count)
    sys.stdout.write(render_cover_verdict(eci, verdict))
    return EXIT_OK if verdict.solvable else EXIT_NO


def cmd_reduce(args) -> int:
    art = reduce(parse_eci(Path(args.file).read_text()))
    _emit(render_ppi(art.instance), args.output)
    if args.roles:
        Path(args.roles).write_text(render_roles(art))
    return EXIT_OK


def cmd_verify(args) -> int:
    eci = parse_eci(Path(args.file).read_text())
    report = verify_reduction(eci, cap=args.cap, workers=args.workers)
    sys.stdout.write(report.render())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _eci_config(args, seed: int) -> GenConfig:
    return GenConfig(seed=seed, n=args.n, k=args.k, planted=args.planted)


def cmd_gen_eci(args) -> int:
    _emit(render_eci(gen_eci(_eci_config(args, args.seed))), args.output)
    return EXIT_OK


def cmd_gen_ppi(args) -> int:
    threshold = parse_rational(args.threshold) if args.threshold else None
    cfg = GenConfig(
        seed=args.seed,
        worlds=args.worlds,
        events=args.events,
        threshold=threshold,
        positive=not args.allow_zero,
    )
    _emit(render_ppi(gen_ppi(cfg)), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    lo, hi = args.seeds
    rows = []
    disagreements = 0
    started = time.perf_counter()
    for seed in range(lo, hi + 1):
        eci = gen_eci(_eci_config(args, seed))
        t0 = time.perf_counter()
        brute = exact_cover_brute(eci, cap=args.cap).solvable
        dlx = exact_cover_dlx(eci).solvable
        ppi = brute_force_persuasion(reduce(eci).instance, cap=args.cap).solvable
        report_ok = verify_reduction(eci, cap=args.cap).passed if args.verify else True
        agree = brute == dlx == ppi and report_ok
        disagreements += not agree
        rows.append((seed, eci.universe_size, eci.k, brute, dlx, ppi, agree, time.perf_counter() - t0))
    total = time.perf_counter() - started
    print(f"{'seed':>8} {'n':>3} {'k':>3} {'brute':>6} {'dlx':>6} {'ppi':>6} {'agree':>6} {'ms':>8}")
    for seed, n, k, b, d, p, a, dt in rows:
        flags = " ".join(f"{_yes_no(v):>6}" for v in (b, d, p, a))
        print(f"{seed:>8} {n:>3} {k:>3} {flags} {dt * 1000:>8.2f}")
    solvable = sum(1 for r in rows if r[3])
    print(
        f"instances={len(rows)} solvable={solvable} disagreements={disagreements} "
        f"seconds={total:.2f}"
    )
    return EXIT_OK if disagreements == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persuasion", description="Persuasion and Exact Cover deciders"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-ppi", help="decide a persuasion instance")
    p.add_argument("file")
    p.add_argument("--strong", action="store_true", help="polynomial threshold-1 decider")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_solve_ppi)

    p = sub.add_parser("solve-eci", help="decide an exact cover instance")
    p.add_argument("file")
    p.add_argument("--engine", choices=("brute", "dlx"), default="dlx")
    p.add_argument("--count", action="store_true", help="count all covers (dlx)")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_solve_eci)

    p = sub.add_parser("reduce", help="reduce an exact cover instance to persuasion")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--roles", help="write the role sidecar here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="exhaustively check the reduction on one instance")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    def eci_sizes(p):
        p.add_argument("--n", type=_range, default=(1, 6), help="universe size range A..B")
        p.add_argument("--k", type=_range, default=(1, 7), help="subset count range A..B")
        p.add_argument("--planted", action="store_true")

    p = sub.add_parser("gen-eci", help="generate a random exact cover instance")
    p.add_argument("--seed", type=int, required=True)
    eci_sizes(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_eci)

    p = sub.add_parser("gen-ppi", help="generate a random persuasion instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--worlds", type=_range, default=(2, 8))
    p.add_argument("--events", type=_range, default=(1, 6))
    p.add_argument("--threshold", help="fixed threshold p/q")
    p.add_argument("--allow-zero", action="store_true", help="allow zero-probability worlds")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_ppi)

    p = sub.add_parser("bench", help="batch equivalence runs over a seed range")
    p.add_argument("--seeds", type=_range, required=True, help="inclusive range A..B")
    eci_sizes(p)
    p.add_argument("--verify", action="store_true", help="also run the full reduction check")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PersuasionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
