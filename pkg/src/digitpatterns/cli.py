"""Command-line entry point: ``digitpatterns <subcommand> ...``.

Exit codes: 0 success, 2 validation error, 3 budget exceeded,
4 self-check (invariant) failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from . import experiments as exp
from .errors import DigitPatternsError, ValidationError


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--output", "-o", default=default(None), help="write the report here (atomically)")
    parser.add_argument("--format", choices=("json", "csv"), default=default(None))
    parser.add_argument("--threads", type=int, default=default(1))
    parser.add_argument("--budget-mb", type=int, default=default(256),
                        help="memory budget for window bit sets, one byte per code")
    parser.add_argument("--seed", type=int, default=default(None), help="reserved; only used by expsum sampling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="digitpatterns", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        _global_flags(p, suppress=True)
        return p

    p = add("expand", help="period and digits of m/n in base g")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("g", type=int)
    p.add_argument("--k", type=int, default=None, help="also count distinct windows of this length")
    p.add_argument("--all-digits", action="store_true", help="do not truncate the digit string")
    p.add_argument("--show", type=int, default=64, help="digits shown when truncating")

    p = add("sweep", help="window coverage at the threshold length over a prime range")
    p.add_argument("A", type=int)
    p.add_argument("B", type=int)
    p.add_argument("g", type=int)
    p.add_argument("--c", default="5/24", help="coefficient as an exact rational, e.g. 5/24, 41/504, 3/37")
    p.add_argument("--eps", default="0")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all-cosets", action="store_true")
    group.add_argument("--coset-sample", type=int, default=exp.DEFAULT_COSET_SAMPLE)

    p = add("order-census", help="how often ord_p(g) exceeds sqrt(p) for p <= x")
    p.add_argument("x", type=int)
    p.add_argument("g", type=int)

    p = add("avoid", help="count residues whose length-H window misses a coset")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.add_argument("H", type=int, nargs="?", default=None)
    p.add_argument("--nontrivial-eps", type=float, default=None, help="use H = ceil(p^(19/24 + eps))")
    p.add_argument("--coset", type=int, default=1)

    p = add("missing-vs-avoid", help="missing strings versus avoiding intervals per coset")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--coset-sample", type=int, default=None)

    p = add("expsum", help="exponential-sum spectrum and moments")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.add_argument("--moments", action="store_true", help="accepted for compatibility; moments are always reported")
    p.add_argument("--check", type=int, default=64, help="number of sampled lambdas checked against direct sums")
    p.add_argument("--coset", type=int, default=1)

    p = add("qs", help="s-fold congruence counts and the U-in-W inclusion")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.add_argument("H", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--coset", type=int, default=1)
    return parser


def run(args: argparse.Namespace) -> dict:
    budget = args.budget_mb * (1 << 20)
    if args.threads < 1:
        raise ValidationError("--threads must be positive")
    if args.command == "expand":
        show = None if args.all_digits else args.show
        return exp.expand_report(args.m, args.n, args.g, args.k, show=show, budget=budget)
    if args.command == "sweep":
        c = exp.parse_coefficient(args.c)
        eps = exp.parse_coefficient(args.eps, allow_zero=True)
        sample = None if args.all_cosets else args.coset_sample
        return exp.sweep(args.A, args.B, args.g, c, eps, coset_sample=sample, threads=args.threads, budget=budget)
    if args.command == "order-census":
        return exp.order_census(args.x, args.g, threads=args.threads)
    if args.command == "avoid":
        return exp.avoid_report(args.p, args.g, args.H, args.nontrivial_eps, coset=args.coset)
    if args.command == "missing-vs-avoid":
        return exp.missing_vs_avoid(args.p, args.g, args.k, coset_sample=args.coset_sample, budget=budget)
    if args.command == "expsum":
        return exp.expsum_report(args.p, args.g, check=args.check, coset=args.coset, seed=args.seed)
    if args.command == "qs":
        return exp.qs_report(args.p, args.g, args.H, args.s, coset=args.coset)
    raise ValidationError(f"unknown command {args.command}")


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def render_csv(report: dict) -> str:
    rows = report["results"]
    if not isinstance(rows, list):
        raise ValidationError(f"{report['schema']} has no tabular results; use --format json")
    buf = io.StringIO()
    buf.write(f"# schema={report['schema']}\n")
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_value(v) for k, v in row.items()})
    for key, value in report["summary"].items():
        buf.write(f"# summary {key}={json.dumps(value)}\n")
    return buf.getvalue()


def _csv_value(v):
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return ""
    return v


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
        fmt = args.format
        if fmt is None:
            fmt = "csv" if args.command == "sweep" else "json"
        text = render_csv(report) if fmt == "csv" else render_json(report)
    except DigitPatternsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
