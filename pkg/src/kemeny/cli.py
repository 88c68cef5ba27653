"""Command-line interface: ``kconsens solve|analyze|gen|reduce``.

Exit codes: 0 success (or "yes" for a decision query), 1 decision "no",
2 invalid input or flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .core import Election, ElectionFormatError, parse_election, serialize_election
from .dp import MAX_CANDIDATES as DP_MAX
from .dp import solve_dp
from .instances import GenParams, analyze, generate
from .oracle import MAX_CANDIDATES as BRUTE_MAX
from .oracle import solve_brute
from .reduce import condorcet_reduce
from .searchtree import SearchConfig, solve

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2


class UsageError(Exception):
    pass


def _read_election(path: str) -> Election:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return parse_election(text)


def _solve_once(e: Election, args, budget: Optional[int]):
    if e.m == 0:
        raise UsageError("election has no candidates")
    if args.alg == "dp":
        if e.m > DP_MAX:
            raise UsageError(f"--alg dp supports at most {DP_MAX} candidates")
        res = solve_dp(e)
        return res if budget is None or res.score <= budget else None
    if args.alg == "brute":
        if e.m > BRUTE_MAX:
            raise UsageError(f"--alg brute supports at most {BRUTE_MAX} candidates")
        res = solve_brute(e)
        return res if budget is None or res.score <= budget else None
    cfg = SearchConfig(algorithm=args.alg, set_size=args.set_size or 4, budget=budget)
    return solve(e, cfg)


def cmd_solve(args) -> int:
    if args.set_size is not None:
        if args.alg != "sets":
            raise UsageError("--set-size only applies to --alg sets")
        if args.set_size < 3:
            raise UsageError("--set-size must be at least 3")
    if args.max_k is not None and args.max_k < 0:
        raise UsageError("--max-k must be non-negative")
    e = _read_election(args.file)

    offset = None
    target = e
    trace = None
    budget = args.max_k
    if args.reduce:
        trace = condorcet_reduce(e)
        offset = trace.total_offset
        target = trace.residual
        if budget is not None:
            budget -= offset

    if target.m == 0:
        # Everything was reduced away.
        res_score, ranking, tag, stats = 0, (), args.alg, None
        found = budget is None or budget >= 0
    elif budget is not None and budget < 0:
        found = False
    else:
        res = _solve_once(target, args, budget)
        found = res is not None
        if found:
            res_score, ranking, tag, stats = res.score, res.consensus.ranking, res.algorithm, res.stats

    if not found:
        if args.json:
            print(json.dumps({"score": None, "consensus": None, "algorithm": _tag(args)}))
        else:
            print("no")
        return EXIT_NO

    if trace is not None:
        ranking = trace.recompose(ranking)
        res_score += offset
    names = [e.candidates[c].name for c in ranking]

    if args.json:
        out = {"score": res_score, "consensus": names, "algorithm": tag}
        if args.stats:
            out["nodes"] = stats.nodes if stats else 0
            out["depth"] = stats.max_depth if stats else 0
        if offset is not None:
            out["offset"] = offset
        print(json.dumps(out))
    else:
        print(f"score: {res_score}")
        print("consensus: " + " > ".join(names))
        if offset is not None:
            print(f"offset: {offset}")
        if args.stats:
            print(f"nodes={stats.nodes if stats else 0} depth={stats.max_depth if stats else 0}")
    return EXIT_OK


def _tag(args) -> str:
    if args.alg == "sets":
        return f"sets-{args.set_size or 4}"
    return args.alg


def cmd_analyze(args) -> int:
    e = _read_election(args.file)
    report = analyze(e)
    if args.json:
        print(json.dumps(report.as_json()))
        return EXIT_OK
    row = report.rendered()
    widths = {k: max(len(k), len(v)) for k, v in row.items()}
    print("  ".join(k.rjust(widths[k]) for k in row))
    print("  ".join(v.rjust(widths[k]) for k, v in row.items()))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        params = GenParams(m=args.m, n=args.n, w=args.w, d=args.d, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = serialize_election(generate(params))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    e = _read_election(args.file)
    trace = condorcet_reduce(e)
    res = trace.residual
    if args.json:
        out = {
            "removed": [
                {"candidate": r.name, "placement": r.placement, "offset": r.offset}
                for r in trace.removed
            ],
            "total_offset": trace.total_offset,
            "residual": [[res.candidates[c].name for c in v.ranking] for v in res.votes] if res.m else [],
        }
        print(json.dumps(out))
        return EXIT_OK
    if not trace.removed:
        print("removed: none")
    for r in trace.removed:
        print(f"removed: {r.name} {r.placement} {r.offset}")
    print(f"total_offset: {trace.total_offset}")
    if res.m == 0:
        print("residual: empty")
    else:
        print("residual:")
        sys.stdout.write(serialize_election(res))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kconsens", description="Exact Kemeny rank aggregation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="compute a Kemeny consensus")
    p.add_argument("--alg", required=True, choices=["pairs", "triples", "sets", "dp", "brute"])
    p.add_argument("--set-size", type=int, default=None)
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="print instance properties")
    p.add_argument("--json", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="generate a random election")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-w", type=float, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="apply the Condorcet reduction rule")
    p.add_argument("--json", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ElectionFormatError) as exc:
        print(f"kconsens: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
