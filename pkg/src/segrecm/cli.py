"""Command line interface: ``segre3``, ``veronese2``, ``verify`` and ``hilbert``.

Exit codes: 0 success, 1 invariant violation, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .expr import ParseError, parse_expr, series_of
from .families import Segre3Params, Veronese2Params
from .report import (
    InvariantViolation,
    render_csv,
    render_json,
    render_text,
    segre3_report,
    veronese2_report,
)
from .series import a_invariant, coefficient, format_series, initial_degree, multiplicity
from .verify import FAULTS, render_verify_json, render_verify_text, run_verify


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _emit(payload, out: str | None):
    data = payload.encode() if isinstance(payload, str) else payload
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _render_family(report, fmt: str):
    if fmt == "csv":
        return render_csv(report)
    if fmt == "json":
        return render_json(report)
    if fmt == "svg":
        from .plotting import figure_bytes, region_map_figure

        return figure_bytes(region_map_figure(report), "svg")
    return render_text(report)


def _write_figure(report, path: str | None):
    if path:
        from .plotting import region_map_figure, save_figure

        save_figure(region_map_figure(report), path)


def cmd_segre3(args) -> int:
    try:
        params = Segre3Params(args.m, args.n, args.p)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = segre3_report(params, display=args.window, serre=args.serre)
    _emit(_render_family(report, args.format), args.out)
    _write_figure(report, args.figure)
    return 0


def cmd_veronese2(args) -> int:
    try:
        params = Veronese2Params(args.m, args.n, args.c, args.d)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = veronese2_report(params, display=args.window)
    _emit(_render_family(report, args.format), args.out)
    _write_figure(report, args.figure)
    return 0


def cmd_verify(args) -> int:
    families = tuple(f.strip() for f in args.families.split(",") if f.strip())
    unknown = [f for f in families if f not in ("segre3", "veronese2")]
    if unknown or not families:
        raise UsageError(f"unknown families: {unknown or args.families}")
    if args.max_param < 2:
        raise UsageError("--max-param must be >= 2")
    report = run_verify(families, max_param=args.max_param, threads=args.threads, fault=args.inject_fault)
    text = render_verify_json(report) if args.format == "json" else render_verify_text(report)
    _emit(text, args.out)
    if args.figures:
        from .plotting import save_figure, verify_summary_figure

        folder = Path(args.figures)
        folder.mkdir(parents=True, exist_ok=True)
        save_figure(verify_summary_figure(report.segre_rows, report.veronese_rows),
                    folder / "verify_summary.svg")
    return 0 if report.ok else 1


def cmd_hilbert(args) -> int:
    try:
        expr = parse_expr(args.expr)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    series = series_of(expr)
    lo, hi = args.coeffs
    coeffs = {k: coefficient(series, k) for k in range(lo, hi + 1)}
    info = {
        "expr": args.expr,
        "series": format_series(series),
        "a": a_invariant(series),
        "r": initial_degree(series),
        "e": multiplicity(series) if series.pole_order else None,
        "coefficients": {str(k): v for k, v in coeffs.items()},
    }
    if args.format == "json":
        text = json.dumps(info, indent=2) + "\n"
    else:
        lines = [
            f"series: {info['series']}",
            f"a = {info['a']}",
            f"r = {info['r']}",
            f"e = {info['e'] if info['e'] is not None else 'n/a (finite length)'}",
            "coefficients: " + " ".join(f"{k}:{v}" for k, v in coeffs.items()),
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segrecm",
        description="Cohen-Macaulay and conic divisor classes of Segre products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", help="write the report to FILE instead of stdout")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="worker processes (affects wall time only)")

    p = sub.add_parser("segre3", help="classify classes of the Segre product of three polynomial rings")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--window", type=_range, help="clamp displayed labels to a:b")
    p.add_argument("--figure", help="also write the region map figure (png/svg/pdf by extension)")
    p.add_argument("--serre", action="store_true", help="attach Serre certificates to non-CM classes")
    common(p, ["text", "csv", "json", "svg"])
    p.set_defaults(func=cmd_segre3)

    p = sub.add_parser("veronese2", help="classify classes of the Segre product of two Veronese rings")
    for name in ("m", "n", "c", "d"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--window", type=_range, help="clamp displayed labels to a:b")
    p.add_argument("--figure", help="also write the region map figure (png/svg/pdf by extension)")
    common(p, ["text", "csv", "json", "svg"])
    p.set_defaults(func=cmd_veronese2)

    p = sub.add_parser("verify", help="run the full verification sweep")
    p.add_argument("--families", default="segre3,veronese2")
    p.add_argument("--max-param", type=int, default=5)
    p.add_argument("--figures", help="directory for summary figures")
    p.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    common(p, ["text", "json"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hilbert", help="evaluate a graded module expression")
    p.add_argument("expr")
    p.add_argument("--coeffs", type=_range, default=(0, 10), help="coefficient range a:b")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hilbert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
