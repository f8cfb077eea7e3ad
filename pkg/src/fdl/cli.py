"""Command-line front end.

Every capability is a subcommand with machine-readable output (table, json
or csv).  Configuration precedence: flags > FDL_* environment variables >
--config JSON file > built-in defaults.  Exit codes: 0 success, 2 usage
error, 1 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import arith, equidist, modular, polyfact, search
from .report import Report, density_report, emit_report, solutions_report

DEFAULTS = {
    "precision_bits": 96,
    "prime_limit": 100000,
    "cache_dir": None,
    "output_format": "table",
    "threads": 0,
}

ENV_KEYS = {
    "precision_bits": "FDL_PRECISION_BITS",
    "cache_dir": "FDL_CACHE_DIR",
    "threads": "FDL_THREADS",
}


@dataclass
class RunConfig:
    precision_bits: int = 96
    prime_limit: int = 100000
    cache_dir: str | None = None
    output_format: str = "table"
    threads: int = 0  # parallelism hint; results are schedule-independent

    def validate(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        if self.prime_limit < 2:
            raise ValueError("prime_limit must be at least 2")


def resolve_config(args) -> RunConfig:
    values = dict(DEFAULTS)
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for key, env in ENV_KEYS.items():
        raw = os.environ.get(env)
        if raw is not None and raw != "":
            values[key] = int(raw) if key != "cache_dir" else raw
    if getattr(args, "precision_bits", None) is not None:
        values["precision_bits"] = args.precision_bits
    if getattr(args, "threads", None) is not None:
        values["threads"] = args.threads
    if getattr(args, "cache_dir", None) is not None:
        values["cache_dir"] = args.cache_dir
    if getattr(args, "format", None) is not None:
        values["output_format"] = args.format
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _parse_interval(text: str) -> tuple[Fraction, Fraction]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = Fraction(lo_s), Fraction(hi_s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad interval {text!r}; expected LO:HI") from exc
    if not 0 <= lo <= hi <= 1:
        raise ValueError(f"interval {text!r} must satisfy 0 <= lo <= hi <= 1")
    return lo, hi


# -- subcommand handlers ------------------------------------------------------


def _cmd_search(args, cfg) -> Report:
    sols = search.brute_force_search(args.c_max, a_min=args.a_min)
    return solutions_report(sols)


def _cmd_locate(args, cfg) -> Report:
    rows = []
    for a in range(args.a_min, args.a_max + 1):
        for k in range(args.k_min, args.k_max + 1):
            hit = search.interval_search(a, k)
            if hit is not None:
                rows.append(hit.to_json_dict())
    return Report(
        kind="root_hits",
        columns=["a", "k", "c", "valid_solution"],
        rows=rows,
        payload=rows,
    )


def _cmd_screen(args, cfg) -> Report:
    prime_max = args.prime_max or cfg.prime_limit
    rows = []
    for p in modular.primes_up_to(prime_max):
        if p <= args.k:
            continue
        out = modular.screen_class_k(p, args.k)
        rows.append(out.to_json_dict())
    return Report(
        kind="screen",
        columns=["p", "k", "verdict", "roots"],
        rows=rows,
        payload=rows,
    )


def _cmd_density(args, cfg) -> Report:
    prime_max = args.prime_max or cfg.prime_limit
    reports = [modular.no_root_density(k, prime_max) for k in args.k]
    return density_report(reports)


def _cmd_count_bound(args, cfg) -> Report:
    rep = modular.count_bound_report(args.p, args.k, args.n)
    row = rep.to_json_dict()
    return Report(
        kind="count_bound",
        columns=["p", "k", "n", "roots", "actual", "bound_num", "bound_den"],
        rows=[row],
        payload=row,
    )


def _cmd_irred(args, cfg) -> Report:
    if args.scan:
        return _scan_report(args.a_max, args.k_max)
    rows = []
    for k in range(args.k_min, args.k_max + 1):
        poly = polyfact.falling_to_monomial(k, 1)
        verdict = polyfact.is_irreducible_over_Z(poly)
        rows.append(
            {
                "k": k,
                "status": verdict.status.value,
                "certificate": json.dumps(verdict.to_json_dict()["certificate"], sort_keys=True),
            }
        )
    return Report(kind="irred", columns=["k", "status", "certificate"], rows=rows, payload=rows)


def _scan_report(a_max: int, k_max: int) -> Report:
    result = polyfact.exception_scan(a_max, k_max)
    rows = [{"k": k, "a": a, "status": "reducible"} for k, a in result.reducible]
    rows += [{"k": k, "a": a, "status": "unknown"} for k, a in result.unknown]
    rows.sort(key=lambda r: (r["k"], r["a"]))
    return Report(
        kind="exception_scan",
        columns=["k", "a", "status"],
        rows=rows,
        payload=result.to_json_dict(),
    )


def _cmd_scan_exceptions(args, cfg) -> Report:
    return _scan_report(args.a_max, args.k_max)


def _cmd_verify_bounds(args, cfg) -> Report:
    x_grid = root_grid = None
    if args.quick:
        x_grid = [Fraction(j, 100) for j in range(1, 101)]
        root_grid = [(k, r) for k in range(2, 11) for r in range(k + 1, k + 20)]
    rep = arith.verify_analytic_bounds(
        x_grid=x_grid,
        root_grid=root_grid,
        precision_bits=args.precision if args.precision else cfg.precision_bits,
        guard_bits=args.guard,
    )
    rows = [
        {"check": m.check, "point": m.point, "margin": repr(m.margin), "ok": m.ok}
        for m in rep.margins
        if args.all_points or not m.ok
    ]
    summary = rep.to_json_dict()
    return Report(
        kind="verify_bounds",
        columns=["check", "point", "margin", "ok"],
        rows=rows or [{"check": "ALL", "point": "-", "margin": summary["min_margin"], "ok": rep.passed}],
        payload=summary,
    )


def _samples_cache_path(cfg: RunConfig, a_max: int, k_max, precision: int) -> Path | None:
    if not cfg.cache_dir:
        return None
    digest = hashlib.sha256(
        json.dumps(
            {"op": "generate_samples", "a_max": a_max, "k_max": k_max, "precision": precision},
            sort_keys=True,
        ).encode()
    ).hexdigest()[:16]
    return Path(cfg.cache_dir) / f"samples-{digest}.jsonl"


def _get_samples(args, cfg) -> equidist.SampleSet:
    if getattr(args, "samples", None):
        return equidist.load_samples(args.samples)
    a_max = args.a_max
    k_max = getattr(args, "k_max", None)
    cache = _samples_cache_path(cfg, a_max, k_max, cfg.precision_bits)
    if cache is not None and cache.exists():
        return equidist.load_samples(cache)
    ss = equidist.generate_samples(a_max, cfg.precision_bits, k_max=k_max)
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        equidist.save_samples(ss, cache)
    return ss


def _cmd_equidist(args, cfg) -> Report:
    if args.action == "generate":
        ss = _get_samples(args, cfg)
        if args.out_samples:
            equidist.save_samples(ss, args.out_samples)
        row = {
            "a_max": ss.a_max,
            "k_max": ss.k_max,
            "size": len(ss),
            "precision_bits": ss.precision_bits,
        }
        return Report("samples", list(row), [row], row)
    if args.action == "count":
        ss = _get_samples(args, cfg)
        lo, hi = _parse_interval(args.interval)
        cnt = equidist.interval_count(ss, lo, hi)
        row = {"size": len(ss), "lo": str(lo), "hi": str(hi), "count": cnt}
        return Report("interval_count", list(row), [row], row)
    if args.action == "discrepancy":
        ss = _get_samples(args, cfg)
        d = equidist.star_discrepancy(ss)
        row = {
            "size": len(ss),
            "dstar_num": d.numerator,
            "dstar_den": d.denominator,
            "dstar": repr(float(d)),
        }
        return Report("discrepancy", list(row), [row], row)
    if args.action == "hits":
        ss = _get_samples(args, cfg)
        rep = equidist.critical_hits(ss, c_floor=args.c_floor)
        payload = rep.to_json_dict()
        row = {
            "odd_hits": rep.odd_hits,
            "odd_total": rep.odd_total,
            "even_hits": rep.even_hits,
            "even_total": rep.even_total,
        }
        return Report("critical_hits", list(row), [row], payload)
    if args.action == "conjecture":
        intervals = [_parse_interval(t) for t in args.interval]
        rows_obj = equidist.conjecture_report(
            args.a_max, [float(e) for e in args.epsilon], intervals, cfg.precision_bits
        )
        rows = [r.to_json_dict() for r in rows_obj]
        cols = ["a_max", "size", "lo", "hi", "count", "deviation_num", "deviation_den"]
        return Report("conjecture", cols, rows, rows)
    raise ValueError(f"unknown equidist action {args.action!r}")


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "csv"], default=None)
    common.add_argument("--out", default=None, help="write the report to a file")
    common.add_argument("--config", default=None, help="JSON config file")
    common.add_argument("--precision-bits", type=int, default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--cache-dir", default=None)

    parser = argparse.ArgumentParser(
        prog="fdl",
        description="Exact-arithmetic toolkit for the factorial equation a!b! = c!",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common], help="exhaustive solution search")
    p.add_argument("--c-max", type=int, required=True)
    p.add_argument("--a-min", type=int, default=2)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("locate", parents=[common], help="interval solver over (a, k) ranges")
    p.add_argument("--a-min", type=int, default=2)
    p.add_argument("--a-max", type=int, required=True)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, required=True)
    p.set_defaults(func=_cmd_locate)

    p = sub.add_parser("screen", parents=[common], help="per-prime class-k screening")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prime-max", type=int, default=None)
    p.set_defaults(func=_cmd_screen)

    p = sub.add_parser("density", parents=[common], help="no-root prime density")
    p.add_argument("--k", type=int, action="append", required=True)
    p.add_argument("--prime-max", type=int, default=None)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("count-bound", parents=[common], help="residue-class solution count bound")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_count_bound)

    p = sub.add_parser("irred", parents=[common], help="irreducibility verdicts")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--scan", action="store_true", help="scan x(x-1)...(x-k+1) - a! instead")
    p.add_argument("--a-max", type=int, default=30)
    p.set_defaults(func=_cmd_irred)

    p = sub.add_parser("scan-exceptions", parents=[common], help="reducible (k, a) cells")
    p.add_argument("--a-max", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.set_defaults(func=_cmd_scan_exceptions)

    p = sub.add_parser("verify-bounds", parents=[common], help="analytic inequality grids")
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--guard", type=int, default=8)
    p.add_argument("--quick", action="store_true")
    p.add_argument("--all-points", action="store_true")
    p.set_defaults(func=_cmd_verify_bounds)

    p = sub.add_parser("equidist", parents=[common], help="sample sets and statistics")
    p.add_argument("action", choices=["generate", "count", "discrepancy", "hits", "conjecture"])
    p.add_argument("--a-max", type=int, action="append", default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--samples", default=None, help="load samples from a JSONL file")
    p.add_argument("--out-samples", default=None, help="persist generated samples")
    p.add_argument("--interval", action="append", default=None, help="LO:HI, repeatable")
    p.add_argument("--epsilon", action="append", default=None)
    p.add_argument("--c-floor", type=int, default=None)
    p.set_defaults(func=_cmd_equidist_dispatch)

    return parser


def _cmd_equidist_dispatch(args, cfg) -> Report:
    # normalize the repeatable flags
    if args.action == "conjecture":
        if not args.a_max or not args.interval:
            raise ValueError("conjecture needs at least one --a-max and one --interval")
        args.epsilon = args.epsilon or ["0.1"]
    else:
        if args.samples is None:
            if not args.a_max:
                raise ValueError(f"{args.action} needs --a-max or --samples")
            if len(args.a_max) != 1:
                raise ValueError(f"{args.action} takes exactly one --a-max")
            args.a_max = args.a_max[0]
        if args.action == "count" and not args.interval:
            raise ValueError("count needs --interval LO:HI")
        if args.interval:
            args.interval = args.interval[0] if args.action == "count" else args.interval
    return _cmd_equidist(args, cfg)


def run(argv=None) -> int:
    """Parse argv, execute, and write the report; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        report = args.func(args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception as exc:  # internal error
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                emit_report(report, cfg.output_format, fh)
        else:
            emit_report(report, cfg.output_format, sys.stdout)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    return 0


def entrypoint():  # console-script shim
    sys.exit(run())


if __name__ == "__main__":
    entrypoint()
