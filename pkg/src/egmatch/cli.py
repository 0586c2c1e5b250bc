"""Command-line entry point: ``egmatch <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import bounds, counting, gallai_edmonds as ge, graph as gr, harness, suites
from .constructive import build_swap_family, emit_swap_matchings, extract_bipartite_family
from .matching import maximum_matching


class UsageError(Exception):
    pass


def _read_graph(path: str) -> gr.Graph:
    if path == "-":
        return gr.parse(sys.stdin.read())
    return gr.read_edge_list(path)


def _emit(text: str, out: Optional[str]) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "s", "a", "b") if getattr(args, k) is not None}
    g = gr.generate(args.kind, **params)
    _emit(gr.serialize(g), args.out)
    return 0


def cmd_decompose(args) -> int:
    g = _read_graph(args.input)
    dec = ge.decompose(g)
    doc = dec.to_json()
    if args.verify:
        rep = ge.verify_decomposition(g, dec)
        doc["verification"] = rep.to_json()
    _emit(json.dumps(doc) + "\n", args.out)
    return 0 if doc.get("verification", {"ok": True})["ok"] else 1


def cmd_count(args) -> int:
    g = _read_graph(args.input)
    try:
        value, method = counting.count_maximum_matchings(
            g, args.method, args.max_a, args.max_component, args.brute_max_n
        )
    except counting.TooLarge as exc:
        print(f"too large: {exc}")
        return 1
    if args.json:
        print(json.dumps({"count": str(value), "method": method}))
    else:
        print(f"{value} ({method})")
    return 0


def cmd_bound(args) -> int:
    if args.input:
        g = _read_graph(args.input)
        rep = bounds.bound_report(g, delta=args.delta)
        doc = rep.to_json()
        doc["chain_ok"] = rep.chain_ok()
        doc["lemma1_ok"] = rep.lemma1_ok()
        print(json.dumps(doc))
        return 0 if rep.chain_ok() and rep.lemma1_ok() else 1
    if args.n is None or args.s is None:
        raise UsageError("bound needs --in or both --n and --s")
    n, s = args.n, args.s
    doc = {"n": n, "s": s, "m_eg": bounds.eg_max_size(n, s), "bound_attained": bounds.eg_bound_attained(n, s)}
    if s > 0:
        t1 = bounds.theorem1_bound(n, s)
        doc["theorem1"] = {"applicable": t1.applicable, "condition": t1.condition,
                           "tolerance": t1.tolerance, "bound": str(t1.bound)}
    if args.epsilon is not None:
        doc["theorem2_bound"] = str(bounds.theorem2_bound(n, s, args.epsilon))
        if s > 0 and bounds.Fraction(s, n) < bounds.h_nu(args.epsilon):
            p = bounds.theorem2_thresholds(args.epsilon, bounds.Fraction(s, n))
            doc["theorem2"] = {"h_nu": str(p.h_nu), "h_delta": str(p.h_delta), "gamma": str(p.gamma)}
    print(json.dumps(doc))
    return 0


def cmd_extract(args) -> int:
    g = _read_graph(args.input)
    if args.side:
        side = [int(t) for t in args.side.split(",") if t]
        rep = extract_bipartite_family(
            g, side, args.mode, args.epsilon, args.gamma, cap=args.max_witnesses
        )
        print(json.dumps(rep.to_json()))
        return 0
    fam = build_swap_family(g, maximum_matching(g))
    doc = fam.to_json()
    doc["witnesses"] = [[list(e) for e in m] for m in emit_swap_matchings(fam, args.max_witnesses)]
    print(json.dumps(doc))
    return 0


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for suite, check, passed, detail in suites.run_suites(names, args.seed):
        status = "PASS" if passed else "FAIL"
        failed += not passed
        extra = f"  ({detail})" if detail and not passed else ""
        print(f"{status}  {suite}: {check}{extra}")
    print(f"{'all suites passed' if not failed else f'{failed} checks failed'}")
    return 1 if failed else 0


def cmd_experiment(args) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = harness.ExperimentConfig.from_json(json.load(fh))
    else:
        cfg = harness.ExperimentConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.grid:
        cfg.grid = [tuple(int(t) for t in cell.split(":")) for cell in args.grid]
        cfg.__post_init__()
    if args.samples is not None:
        cfg.samples_per_cell = args.samples
    if args.method:
        cfg.counting_method = args.method
    if args.max_witnesses is not None:
        cfg.max_witnesses = args.max_witnesses
    records, summary = harness.run_experiment(cfg)
    _emit(harness.records_to_jsonl(records), args.out)
    table = harness.format_summary(summary)
    print(table, file=sys.stderr if not args.out or args.out == "-" else sys.stdout)
    return 0 if summary["ok"] == summary["records"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="egmatch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated graph as an edge list")
    p.add_argument("--kind", required=True, choices=[k.replace("_", "-") for k in gr.GENERATOR_KINDS] + list(gr.GENERATOR_KINDS))
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("decompose", help="Gallai-Edmonds decomposition as JSON")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("count", help="exact number of maximum matchings")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--method", choices=("brute", "decomposed", "auto"), default="auto")
    p.add_argument("--max-a", type=int, default=counting.DEFAULT_MAX_A)
    p.add_argument("--max-component", type=int, default=counting.DEFAULT_MAX_COMPONENT)
    p.add_argument("--brute-max-n", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bound", help="bound report for a graph, or formulas for (n, s)")
    p.add_argument("--in", dest="input")
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--delta", type=bounds.Fraction)
    p.add_argument("--epsilon", type=bounds.Fraction)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("extract", help="constructive families: bipartite (--side) or swap")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--side", help="comma-separated A side; omit for a swap family")
    p.add_argument("--mode", choices=("fixed", "parameterized"), default="fixed")
    p.add_argument("--epsilon", type=bounds.Fraction)
    p.add_argument("--gamma", type=bounds.Fraction)
    p.add_argument("--max-witnesses", type=int, default=10)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=["all", *suites.SUITES], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="run a seeded near-extremal experiment")
    p.add_argument("--config", help="JSON document with ExperimentConfig fields")
    p.add_argument("--grid", nargs="*", help="cells as n:s:deficiency")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--method", choices=("brute", "decomposed", "auto"))
    p.add_argument("--max-witnesses", type=int)
    p.add_argument("--out", default="-", help="JSON-lines report path")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, gr.GraphError, ValueError, OSError) as exc:
        print(f"egmatch {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
