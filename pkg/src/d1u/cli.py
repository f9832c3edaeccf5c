"""Command-line interface.

Exit status: 0 on success (d1u / certified / found), 1 when the answer is
negative (not d1u, NOT-CERTIFIED, nothing found), 2 on usage, domain or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import platform
import sys
import time
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import constructions, design, diffcalc, io, search
from .errors import D1uError
from .groups import AbelianGroup

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

# Published computer-search values, kept for side-by-side display with the computed bounds.
RECORDED_TABLE = {14: {"systematic": 39, "computer": 20}, 20: {"systematic": 57, "computer": 32}, 21: {"systematic": 46, "computer": 37}}


class UsageError(Exception):
    pass


def _versions() -> dict:
    try:
        pkg = version("d1u")
    except PackageNotFoundError:
        pkg = "unknown"
    return {"d1u": pkg, "python": platform.python_version(), "numpy": np.__version__}


def _emit(args, inputs: dict, outputs: dict, started: float, text: str) -> None:
    if args.json:
        bundle = {
            "command": args.command,
            "argv": sys.argv[1:],
            "inputs": inputs,
            "outputs": outputs,
            "versions": _versions(),
            "timings": {"wall_seconds": time.perf_counter() - started},
        }
        print(json.dumps(bundle, indent=2))
    else:
        print(text)


def _positive_d(d: int) -> int:
    if d < 2:
        raise UsageError(f"dimension must be >= 2, got {d}")
    return d


def cmd_plan(args) -> int:
    t0 = time.perf_counter()
    pl = constructions.plan(_positive_d(args.d))
    cb = pl.comparison_bounds
    lines = [
        f"d = {pl.d}  branch = {pl.branch}",
        f"seed: q = {pl.q} ({pl.base_family}, codomain order {pl.base_order})",
    ]
    if pl.p is not None:
        lines.append(f"least prime coprime to d: p = {pl.p}")
    lines += [
        f"codomain: {pl.codomain}",
        f"bound on C(d): {pl.bound}",
        f"bases_count: {pl.bases_count}",
        f"comparison: corollary7 = {cb['corollary7']:.2f}, chebyshev = {cb['chebyshev']}, "
        f"prior = {cb['prior']}, dlogd_only = {cb['dlogd_only']}",
    ]
    _emit(args, {"d": args.d}, {"plan": pl.to_json()}, t0, "\n".join(lines))
    return EXIT_OK


def cmd_build(args) -> int:
    t0 = time.perf_counter()
    base = io.read_function(args.base) if args.base else None
    f = constructions.build(_positive_d(args.d), base)
    if args.output:
        io.write_function(f, args.output)
    text = json.dumps(io.function_to_json(f)) if not args.output else f"wrote d1u function into {f.codomain} to {args.output}"
    _emit(args, {"d": args.d, "base": args.base}, {"function": io.function_to_json(f), "path": args.output}, t0, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    f = io.read_function(args.file)
    check = diffcalc.is_d1u_bruteforce if args.bruteforce else diffcalc.is_d1u
    verdict = check(f)
    text = f"d1u: {'true' if verdict.is_d1u else 'false'}"
    if verdict.witness:
        a, x, x2 = verdict.witness
        text += f"  (witness a={a}, x={x}, x'={x2})"
    _emit(args, {"file": args.file, "bruteforce": args.bruteforce},
          {"d": f.d, "codomain": f.codomain.to_json(), "is_d1u": verdict.is_d1u,
           "witness": list(verdict.witness) if verdict.witness else None}, t0, text)
    return EXIT_OK if verdict.is_d1u else EXIT_NEGATIVE


def _parse_group(text: str) -> AbelianGroup:
    try:
        return AbelianGroup([int(n) for n in text.split(",") if n.strip()])
    except ValueError as exc:
        raise UsageError(f"bad group {text!r}: {exc}") from exc


def cmd_search(args) -> int:
    t0 = time.perf_counter()
    d = _positive_d(args.d)
    lo = args.min_order if args.min_order is not None else d
    hi = args.max_order if args.max_order is not None else 4 * d
    cfg = search.SearchConfig(args.budget, (lo, hi), not args.no_normalize, args.seed, args.workers)
    inputs = {"d": d, "min_order": lo, "max_order": hi, "budget": args.budget, "seed": args.seed, "workers": args.workers}
    if args.group:
        res = search.search_group(d, _parse_group(args.group), cfg)
        results, outputs = [res], {"result": res.to_json()}
        found = res.status is search.Status.FOUND
        summary = f"{res.group}: {res.status.value}"
    else:
        out = search.search_min_order(d, cfg)
        results, outputs = out.results, {"outcome": out.to_json()}
        found = out.min_order is not None
        summary = f"minimum order found: {out.min_order}" if found else "no d1u function found in range"
        summary += "\n" + "\n".join(f"  order {n}: {s.value}" for n, s in out.order_status.items())
    lines = [f"{r.group} (order {r.order}): {r.status.value}, {r.nodes} nodes, {r.elapsed:.2f}s" for r in results]
    hit = next((r for r in results if r.function is not None), None)
    if hit:
        lines.append("values: " + json.dumps([list(v) for v in hit.function.values]))
    _emit(args, inputs, outputs, t0, "\n".join(lines + [summary]))
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_design(args) -> int:
    t0 = time.perf_counter()
    f = io.read_function(args.file)
    if f.d > args.max_d:
        raise UsageError(f"d = {f.d} exceeds --max-d {args.max_d}")
    bs = design.character_bases(f)
    unbiased = design.unbiasedness_report(bs)
    inputs = {"file": args.file, "check_only": args.check_only, "trials": args.trials}
    if args.check_only:
        text = f"d = {bs.d}: {bs.count} orthonormal bases, max cross-basis |<u,v>|^2 - 1/d deviation {unbiased:.3e}"
        _emit(args, inputs, {"d": bs.d, "bases_count": bs.count, "unbiasedness": unbiased}, t0, text)
        return EXIT_OK
    wd = design.solve_weights(bs, args.tol)
    haar = design.haar_point_check(wd, args.trials, args.seed)
    payload = wd.to_json()
    payload.update({"unbiasedness": unbiased, "haar_deviation": haar})
    if args.output:
        Path(args.output).write_text(json.dumps(payload) + "\n", encoding="utf-8")
    status = "CERTIFIED" if wd.certified else "NOT-CERTIFIED"
    text = "\n".join([
        f"d = {wd.d}, {bs.count} bases: {status}",
        f"residual = {wd.residual:.3e}  potential_gap = {wd.potential_gap:.3e}  haar({args.trials}) = {haar:.3e}",
        f"weights: min {wd.basis_weights.min():.6g}, max {wd.basis_weights.max():.6g}",
        f"unbiasedness deviation = {unbiased:.3e}",
    ])
    outputs = {k: v for k, v in payload.items() if k != "bases"} if not args.full else payload
    _emit(args, inputs, outputs, t0, text)
    return EXIT_OK if wd.certified else EXIT_NEGATIVE


def table_rows() -> list[dict]:
    rows = []
    for d, recorded in RECORDED_TABLE.items():
        rows.append({"d": d, "systematic": constructions.plan(d).bound, "computer_recorded": recorded["computer"]})
    return rows


def cmd_table(args) -> int:
    t0 = time.perf_counter()
    rows = table_rows()
    lines = ["  d | systematic (computed) | computer search (recorded)", "----+-----------------------+---------------------------"]
    lines += [f"{r['d']:>3} | {r['systematic']:>21} | {r['computer_recorded']:>26}" for r in rows]
    _emit(args, {}, {"rows": rows}, t0, "\n".join(lines))
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=float, default=argparse.SUPPRESS, help="search time budget in seconds")

    parser = argparse.ArgumentParser(prog="d1u", parents=[common], description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", parents=[common], help="bound on C(d) and the construction behind it")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("build", parents=[common], help="construct a d1u function on Z/dZ")
    p.add_argument("d", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--base", help="seed function file to use instead of the built-in families")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="check a function file for differential 1-uniformity")
    p.add_argument("file")
    p.add_argument("--bruteforce", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="backtracking search for small codomains")
    p.add_argument("d", type=int)
    p.add_argument("--min-order", type=int)
    p.add_argument("--max-order", type=int)
    p.add_argument("--group", help="search one group, e.g. 4,5")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-normalize", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("design", parents=[common], help="build and certify the induced weighted 2-design")
    p.add_argument("file")
    p.add_argument("--check-only", action="store_true")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--tol", type=float, default=design.RESIDUAL_TOL)
    p.add_argument("--max-d", type=int, default=32)
    p.add_argument("--full", action="store_true", help="include basis vectors in --json output")
    p.add_argument("-o", "--output", help="write the design JSON (with bases) here")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("table", parents=[common], help="systematic bounds for d = 14, 20, 21")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    args.budget = getattr(args, "budget", 60.0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, D1uError, io.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
