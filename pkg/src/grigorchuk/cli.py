"""Command-line front end: ``grigorchuk <subcommand> ...``.

Exit codes: 0 success or PASS, 1 FAIL, 2 usage or parse error, 3 budget
exhausted.  ``--json`` switches stdout to one JSON document per call.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, group
from .errors import OrderBudgetExceeded, ResourceCapError, WordParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CACHE_ENV = "GRIGORCHUK_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "grigorchuk"


class _Out:
    """Collects a payload for ``--json`` and prints text lines otherwise."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.payload: dict = {}

    def text(self, line: str) -> None:
        if not self.as_json:
            print(line)

    def flush(self) -> None:
        if self.as_json:
            print(json.dumps(self.payload, indent=2, sort_keys=True, default=str))


def _word(text: str) -> str:
    return group.parse_word(text)


def cmd_reduce(args, out):
    r = group.reduce(_word(args.word))
    out.payload.update(word=args.word, reduced=r.letters, type=r.type_tag, length=len(r.letters))
    out.text(r.letters if r.letters else "(identity: empty word)")
    out.text(f"type {r.type_tag or '-'}, length {len(r.letters)}")
    return EXIT_OK


def cmd_solve(args, out):
    verdict = "identity" if group.is_identity(_word(args.word)) else "nontrivial"
    out.payload.update(word=args.word, verdict=verdict)
    out.text(verdict)
    return EXIT_OK


def cmd_equal(args, out):
    same = group.are_equal(_word(args.u), _word(args.v))
    out.payload.update(u=args.u, v=args.v, equal=same)
    out.text("equal" if same else "different")
    return EXIT_OK


def cmd_order(args, out):
    w = _word(args.word)
    try:
        k = group.order_exponent(w, args.k_max)
    except OrderBudgetExceeded:
        out.payload.update(word=args.word, exceeded=True, k_max=args.k_max)
        out.text(f"exceeded k_max = {args.k_max}")
        return EXIT_BUDGET
    out.payload.update(word=args.word, order=1 << k, exponent=k)
    out.text(f"{1 << k} = 2^{k}")
    return EXIT_OK


def cmd_portrait(args, out):
    from .tree import format_portrait

    p = group.portrait_of(_word(args.word), args.depth)
    text = format_portrait(p)
    out.payload.update(word=args.word, depth=args.depth, portrait=text,
                       leaf_permutation=p.leaf_permutation().tolist())
    out.text(text if text else "(depth 0)")
    return EXIT_OK


def _ball(args, radius):
    from .growth import enumerate_ball

    return enumerate_ball(radius, args.key_depth, cap=args.cap,
                          budget_secs=args.budget_secs, cache_dir=args.cache_dir)


def cmd_growth(args, out):
    from .export import export_series

    table, series = _ball(args, args.radius)
    spheres = series.spheres
    out.payload.update(values=series.values, spheres=spheres, meta=series.meta)
    out.text(f"{'n':>3}  {'sphere':>12}  {'gamma':>12}")
    for n, g in enumerate(series.values):
        out.text(f"{n:>3}  {spheres[n]:>12}  {g:>12}")
    out.text(f"{series.meta.get('wall_time', 0.0):.2f}s, key depth {table.key_depth}"
             + (f", cache {series.meta['cache_id']}" if series.meta.get("cache_id") else ""))
    if args.out:
        path = export_series(series, args.out, args.format)
        out.payload["out"] = str(path)
        out.text(f"wrote {path}")
    if series.meta.get("partial"):
        out.text(f"PARTIAL: budget exhausted at radius {series.radius} of {args.radius}")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args, out):
    from .verify import run_suite

    results = run_suite(args.suite, radius=args.radius, samples=args.samples,
                        cache_dir=args.cache_dir, budget_secs=args.budget_secs,
                        lemma_radius=args.lemma_radius)
    for r in results:
        out.text(r.line())
    passed = all(r.passed for r in results)
    budget = any(r.data.get("budget") for r in results)
    report = {
        "suite": args.suite,
        "version": __version__,
        "passed": passed,
        "results": [r.to_dict() for r in results],
    }
    out.payload.update(report)
    report_path = Path(args.report) if args.report else Path(args.cache_dir) / f"verify-{args.suite}.json"
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(json.dumps(report, indent=2, default=str))
    out.text(f"{'PASS' if passed else 'FAIL'}: {sum(r.passed for r in results)}/{len(results)} checks; "
             f"report {report_path}")
    if budget:
        return EXIT_BUDGET
    return EXIT_OK if passed else EXIT_FAIL


def cmd_bench(args, out):
    from .bench import run_scaling

    if args.max_len > 1 << 24:
        raise ResourceCapError("--max-len is capped at 2^24")
    started = time.perf_counter()
    report = run_scaling(args.max_len, reps=args.reps, seed=args.seed, family=args.family)
    elapsed = time.perf_counter() - started
    out.text(f"{'n':>9}  {'cpu s':>10}  {'ns/letter':>9}")
    for n, cpu, _ in report.rows:
        out.text(f"{n:>9}  {cpu:>10.4g}  {cpu / n * 1e9:>9.1f}")
    out.text(f"top doubling ratios {[round(r, 2) for r in report.top_ratios]}, "
             f"log-log slope {report.loglog_slope:.3f}, "
             f"t(n)/n vs log n slope {report.nlogn_coefficient:.3g}, seed {args.seed}, {elapsed:.1f}s")
    out.payload.update(family=args.family, seed=args.seed, reps=args.reps, rows=report.rows,
                       top_ratios=report.top_ratios, loglog_slope=report.loglog_slope,
                       nlogn_coefficient=report.nlogn_coefficient, seconds=elapsed)
    if args.out:
        report.to_csv(args.out)
        out.text(f"wrote {args.out}")
    return EXIT_OK


def cmd_export(args, out):
    if args.what == "series":
        from .export import export_series

        table, series = _ball(args, args.radius)
        if series.meta.get("partial"):
            out.text(f"PARTIAL: budget exhausted at radius {series.radius}")
            return EXIT_BUDGET
        path = export_series(series, args.out, args.format)
    else:
        from .stabilizers import build_coset_table

        table = build_coset_table(args.level)
        path = Path(args.out)
        path.write_text(table.to_json())
        out.payload.update(level=args.level, index=table.index)
    out.payload["out"] = str(path)
    out.text(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grigorchuk",
        description="Word problem, tree portraits and growth of Grigorchuk's first group.",
        epilog=f"Exit codes: 0 ok/PASS, 1 FAIL, 2 usage or parse error, 3 budget exhausted. "
               f"The cache directory defaults to ${CACHE_ENV} or ~/.cache/grigorchuk.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--cache-dir", default=None, help="directory for ball caches and reports")
    parser.add_argument("--budget-secs", type=float, default=None,
                        help="wall-clock budget for ball enumeration")
    parser.add_argument("--json", action="store_true", help="print one JSON document instead of text")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("reduce", help="reduced spelling and type of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="decide whether a word is the identity")
    p.add_argument("word")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("equal", help="decide whether two words are the same element")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("order", help="order of an element (always a power of 2)")
    p.add_argument("word")
    p.add_argument("--k-max", type=int, default=group.DEFAULT_K_MAX)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("portrait", help="portrait of a word truncated at a depth")
    p.add_argument("word")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_portrait)

    def ball_options(p, radius):
        p.add_argument("--radius", type=int, default=radius)
        p.add_argument("--key-depth", type=int, default=None)
        p.add_argument("--cap", type=int, default=14, help="largest radius allowed (default 14)")

    p = sub.add_parser("growth", help="enumerate the ball and print gamma(n)")
    ball_options(p, 10)
    p.add_argument("--out", default=None, help="write the series to this .csv or .json file")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.set_defaults(func=cmd_growth)

    from .verify import LEMMA_RADIUS, SUITES

    p = sub.add_parser("verify", help="run a check suite and report PASS/FAIL")
    p.add_argument("suite", choices=SUITES + ("bench", "all"))
    p.add_argument("--radius", type=int, default=14)
    p.add_argument("--lemma-radius", type=int, default=None,
                   help="ball radius for the lemma7 and cancellation scans "
                        f"(default: --radius, or {LEMMA_RADIUS} under 'all')")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--report", default=None, help="JSON report path (default: in the cache dir)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the word-problem solver at doubling lengths")
    p.add_argument("--max-len", type=int, default=1 << 20)
    p.add_argument("--reps", type=int, default=15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", choices=("random", "relator"), default="random")
    p.add_argument("--out", default=None, help="CSV output path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export", help="write a growth series or a coset table")
    p.add_argument("what", choices=("series", "cosets"))
    p.add_argument("--out", required=True)
    ball_options(p, 10)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--level", type=int, default=3, help="tree level for cosets")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_dir is None:
        args.cache_dir = str(default_cache_dir())
    if args.budget_secs is not None and args.budget_secs <= 0:
        parser.error("--budget-secs must be positive")
    out = _Out(args.json)
    try:
        code = args.func(args, out)
    except WordParseError as exc:
        print(f"grigorchuk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCapError, ValueError) as exc:
        print(f"grigorchuk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
