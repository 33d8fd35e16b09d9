"""klab command line: generate | invariants | verify | sweep.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import KlabError
from .graphs import FamilySpec, Graph, make_snr2
from .report import build_report
from .sweep import (
    SweepConfig,
    parse_int_set,
    ratio_envelope_ok,
    ratio_table,
    render_reports,
    run_reports,
    verify,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _family_spec(args) -> FamilySpec:
    deleted = parse_int_set(args.delete) if args.delete else ()
    return FamilySpec(args.n, frozenset(deleted))


def _subsets(text: str):
    if text == "all":
        return "all"
    try:
        return int(text)
    except ValueError:
        raise KlabError(f"--subsets must be 'all' or an integer, got {text!r}") from None


def _sweep_config(args) -> SweepConfig:
    return SweepConfig(
        n_values=parse_int_set(args.n),
        r_values=None if args.r == "all" else parse_int_set(args.r),
        subsets=_subsets(args.subsets),
        seed=args.seed,
        mode=args.mode,
        variant=args.variant,
        tol=args.tol,
        fmt=args.format,
        out=args.out,
        oracle=not getattr(args, "no_oracle", False),
    )


def cmd_generate(args) -> int:
    g = make_snr2(_family_spec(args))
    if args.format == "csv":
        text = "u,v\n" + "".join(f"{u},{v}\n" for u, v in g.sorted_edges())
    else:
        text = g.to_json(indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    if args.file:
        graph = Graph.from_json(Path(args.file).read_text())
        report = build_report(graph=graph, mode=args.mode, variant=args.variant, tol=args.tol)
    else:
        if args.n is None:
            raise KlabError("invariants needs --n or --file")
        report = build_report(spec=_family_spec(args), mode=args.mode, variant=args.variant, tol=args.tol)
    _emit(render_reports([report], args.format), args.out)
    return EXIT_OK if report.all_agree else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.ratio:
        rows = ratio_table(parse_int_set(args.n))
        lines = ["n,kf_over_w,kf_over_w_gap,kfstar_over_gut,kfstar_over_gut_gap,within_envelope"]
        for row in rows:
            lines.append(
                f"{row['n']},{float(row['kf_over_w']):.12f},{float(row['kf_over_w_gap']):.3e},"
                f"{float(row['kfstar_over_gut']):.12f},{float(row['kfstar_over_gut_gap']):.3e},{ratio_envelope_ok(row)}"
            )
        lines.append("limits: Kf/W -> 8/15, Kf*/Gut -> 16/33")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK if all(ratio_envelope_ok(r) for r in rows) else EXIT_FAIL
    config = _sweep_config(args)
    tallies = verify(config)
    lines = [f"variant: {config.variant}"]
    failures = 0
    for name, t in tallies.items():
        verdict = "PASS" if t.failed == 0 else "FAIL"
        lines.append(f"{verdict}  {name}: {t.passed} passed, {t.failed} failed")
        if t.failed:
            lines.append(f"      first failure: {t.first_failure}")
        failures += t.failed
    lines.append(f"total failures: {failures}")
    _emit("\n".join(lines) + "\n", args.out)
    if config.variant == "proof" and failures:
        return EXIT_FAIL
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _sweep_config(args)
    _emit(render_reports(run_reports(config), config.fmt), config.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klab", description="Kirchhoff-type invariants of S_n x K_2 and its variants")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family_n: bool):
        if family_n:
            p.add_argument("--n", type=int, help="star order n >= 2")
            p.add_argument("--delete", default="", help="comma list of indices i whose edge ii' is removed")
        else:
            p.add_argument("--n", required=True, help="n values: '2..10', '5' or '2,4,6'")
            p.add_argument("--r", default="all", help="r values or 'all'")
            p.add_argument("--subsets", default="all", help="'all' or k sampled subsets per (n, r)")
            p.add_argument("--seed", type=int, default=None)
        p.add_argument("--variant", choices=("proof", "statement"), default="proof")
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)

    p = sub.add_parser("generate", help="write one family member as an edge list")
    common(p, family_n=True)
    p.set_defaults(func=cmd_generate, format="json")

    p = sub.add_parser("invariants", help="invariant report for one graph")
    common(p, family_n=True)
    p.add_argument("--file", default=None, help="edge-list JSON of an arbitrary graph")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="check every formula clause against the oracle")
    common(p, family_n=False)
    p.add_argument("--ratio", action="store_true", help="print the Kf/W and Kf*/Gut convergence table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="emit the full data table over a grid")
    common(p, family_n=False)
    p.add_argument("--no-oracle", action="store_true", help="closed forms and analytic spectra only")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and args.n is None:
        parser.error("generate needs --n")
    try:
        return args.func(args)
    except (KlabError, OSError, json.JSONDecodeError) as exc:
        print(f"klab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
