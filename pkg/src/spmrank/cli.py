"""``spmrank`` command line: validate, rank, compare, sample.

Exit codes: 0 ok, 1 bad input or usage, 2 not strongly connected,
3 periodic, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .errors import SpmError
from .ranking import Measure
from .spectral import spm_chain


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is reserved for reducible input
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _measures(text: str) -> list[Measure]:
    out = []
    for name in text.split(","):
        name = name.strip().lower()
        try:
            out.append(Measure(name))
        except ValueError:
            choices = ", ".join(m.value for m in Measure)
            raise argparse.ArgumentTypeError(f"unknown measure {name!r} (choose from {choices})") from None
    return out


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"threshold must be positive, got {text}")
    return x


def _common(p: argparse.ArgumentParser, spm_flags: bool = True) -> None:
    p.add_argument("input", help="edge-list file, or fixture:<name> for a bundled one")
    p.add_argument("--directed", action="store_true", help="read edges as directed (default: undirected)")
    if spm_flags:
        p.add_argument("--restrict-scc", action="store_true", help="use the largest strongly connected component")
        p.add_argument("--allow-periodic", action="store_true", help="rank periodic graphs anyway")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spmrank", description="Shannon-Parry node ranking and baseline centralities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check strong connectivity and aperiodicity")
    _common(p, spm_flags=False)

    p = sub.add_parser("rank", help="rank nodes by SPM and optional baseline measures")
    _common(p)
    p.add_argument("--threshold", type=_positive_float, action="append",
                   help="cap weights at this value; repeat for a threshold sweep")
    p.add_argument("--measures", type=_measures, default=[Measure.SPM],
                   help="comma-separated: spm,dc,bc,cc,ec,kshell,pagerank,srw")
    p.add_argument("--top", type=int, default=None, help="keep only the first N nodes per ranking")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("compare", help="pairwise Kendall tau and top-k overlap between measures")
    _common(p)
    p.add_argument("--threshold", type=_positive_float, default=None)
    p.add_argument("--measures", type=_measures, default=[Measure.SPM, Measure.DC])
    p.add_argument("-k", "--k", dest="ks", type=int, action="append", help="top-k size (repeatable; default 5 and 10)")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sample", help="simulate the SPM walk and report visit frequencies")
    _common(p)
    p.add_argument("--steps", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", default=None, help="start node label (default: first node)")
    return parser


def cmd_validate(args) -> int:
    g = report.load_graph(args.input, args.directed)
    conn = report.connectivity_dict(g)
    out = {"nodes": g.n, "edges": g.edge_count, "directed": g.directed, **conn}
    sys.stdout.write(report.dumps_json(out))
    if not conn["strongly_connected"] or conn["period"] is None:
        return 2
    return 0 if conn["aperiodic"] else 3


def cmd_rank(args) -> int:
    g = report.load_graph(args.input, args.directed)
    thresholds = args.threshold or [None]
    reports = [
        report.build_rank_report(g, args.measures, t, args.restrict_scc, args.allow_periodic)
        for t in thresholds
    ]
    for rep in reports:
        for w in rep.warnings:
            print(f"warning: {w}", file=sys.stderr)
    if len(reports) == 1:
        rep = reports[0]
        text = report.dumps_json(rep.to_dict(args.top)) if args.format == "json" else report.rank_csv(rep, args.top)
    elif args.format == "json":
        text = report.dumps_json({"thresholds": [r.to_dict(args.top) for r in reports]})
    else:
        text = report.sweep_csv(reports, args.top or 10)
    sys.stdout.write(text)
    return 0


def cmd_compare(args) -> int:
    measures = list(dict.fromkeys(args.measures))
    if len(measures) < 2:
        raise SpmError("compare needs at least two distinct measures")
    g = report.load_graph(args.input, args.directed)
    g, warnings = report.prepare(g, args.threshold, args.restrict_scc, args.allow_periodic)
    pi = spm_chain(g).pi if "spm" in [m.value for m in measures] else None
    rankings, more = report.rankings_for(g, measures, pi, strict=True)
    for w in warnings + more:
        print(f"warning: {w}", file=sys.stderr)
    rows = report.comparison_rows(rankings, args.ks or [5, 10])
    sys.stdout.write(report.dumps_json(rows) if args.format == "json" else report.compare_csv(rows))
    return 0


def cmd_sample(args) -> int:
    if args.steps < 0:
        raise SpmError("--steps must be nonnegative")
    g = report.load_graph(args.input, args.directed)
    if args.restrict_scc:
        g, _ = report.prepare(g, restrict_scc=True, allow_periodic=True)
    out = report.sample_report(g, args.steps, args.seed, args.start, args.allow_periodic)
    sys.stdout.write(report.dumps_json(out))
    return 0


COMMANDS = {"validate": cmd_validate, "rank": cmd_rank, "compare": cmd_compare, "sample": cmd_sample}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SpmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
