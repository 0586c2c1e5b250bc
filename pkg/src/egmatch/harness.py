"""Near-extremal instance sampling and the experiment runner.

Randomness comes from :class:`random.Random` (MT19937).  Every sample gets
its own generator seeded with the string ``"<seed>:<n>:<s>:<budget>:<index>"``
(string seeds are hashed with SHA-512 by the standard library), so records
are reproducible regardless of scheduling or worker count.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Optional

from . import bounds, constructive
from .counting import (
    DEFAULT_MAX_A,
    DEFAULT_MAX_COMPONENT,
    TooLarge,
    count_maximum_matchings,
    count_maximum_matchings_bruteforce,
    count_maximum_matchings_decomposed,
)
from .gallai_edmonds import Decomposition, decompose, extend_to_maximum, verify_decomposition
from .graph import Graph, complete, delete_vertices, extremal_i, extremal_ii, remove_edges
from .matching import matching_number, maximum_matching, validate_matching

WORKERS_ENV = "EGMATCH_WORKERS"


class SamplingError(RuntimeError):
    pass


@dataclass
class ExperimentConfig:
    seed: int = 0
    grid: list[tuple[int, int, int]] = field(default_factory=list)
    samples_per_cell: int = 1
    counting_method: str = "auto"
    max_a: int = DEFAULT_MAX_A
    max_component: int = DEFAULT_MAX_COMPONENT
    brute_max_n: int = 14
    max_witnesses: int = 5
    swap_cap: int = 200
    retry_budget: int = 200
    # "theorem1" means delta = nu/25; otherwise a rational such as "1/10".
    case_delta: str = "theorem1"
    epsilon: str = "1/2"

    def __post_init__(self) -> None:
        self.grid = [tuple(int(t) for t in cell) for cell in self.grid]
        for n, s, budget in self.grid:
            if budget < 0 or s < 0 or 2 * s > n:
                raise ValueError(f"invalid grid cell (n={n}, s={s}, deficiency={budget})")
        if self.counting_method not in ("brute", "decomposed", "auto"):
            raise ValueError(f"unknown counting method {self.counting_method!r}")

    @classmethod
    def from_json(cls, doc: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**doc)

    def to_json(self) -> dict:
        out = asdict(self)
        out["grid"] = [list(c) for c in self.grid]
        return out


def base_family(n: int, s: int) -> tuple[str, Graph]:
    """The densest extremal graph for ``(n, s)``; ``complete`` when degenerate."""
    if 2 * s > n or s < 0:
        raise ValueError(f"no graph on {n} vertices has matching number {s}")
    if 2 * s == n and n > 0:
        return "complete", complete(n)
    gi = extremal_i(n, s)
    if 2 * s + 1 <= n:
        gii = extremal_ii(n, s)
        if gii.m > gi.m:
            return "extremal_ii", gii
    return "extremal_i", gi


def base_closed_form(kind: str, n: int, s: int) -> int:
    if kind == "extremal_i":
        return bounds.extremal_count("i", n, s)
    if kind == "extremal_ii":
        return bounds.extremal_count("ii", n, s)
    return factorial(n) // (factorial(n // 2) * 2 ** (n // 2))


def _target_size(kind: str, n: int, s: int) -> int:
    # At s = n/2 the extremal bound is unattainable; K_n is the densest graph.
    if kind == "complete":
        return n * (n - 1) // 2
    return bounds.eg_max_size(n, s)


def _sample(n: int, s: int, budget: int, rng: random.Random, retry_budget: int = 200):
    kind, g = base_family(n, s)
    removed = []
    for _ in range(budget):
        if g.m == 0:
            break
        for _attempt in range(retry_budget):
            e = g.edges[rng.randrange(g.m)]
            h = remove_edges(g, [e])
            if matching_number(h) == s:
                g = h
                removed.append(e)
                break
        else:
            if not any(matching_number(remove_edges(g, [e])) == s for e in g.edges):
                break  # every remaining edge is essential: "up to" the budget
            raise SamplingError(
                f"no removable edge found in {retry_budget} tries (n={n}, s={s}, removed={len(removed)})"
            )
    return kind, removed, g


def sample_near_extremal(n: int, s: int, deficiency: int, seed: int | str, retry_budget: int = 200) -> Graph:
    """Extremal graph for ``(n, s)`` with up to ``deficiency`` random edges
    removed, never changing the matching number."""
    _, _, g = _sample(n, s, deficiency, random.Random(seed), retry_budget)
    return g


def _a_part(dec: Decomposition, matching) -> list[tuple[int, int]]:
    in_a = set(dec.A)
    comp = dec.component_of()
    out = []
    for u, v in matching:
        if u in in_a and v in comp:
            out.append((u, v))
        elif v in in_a and u in comp:
            out.append((v, u))
    return sorted(out)


def _case1_extraction(g: Graph, dec: Decomposition, matching, cfg: ExperimentConfig) -> dict:
    # Keep one vertex per component (the M-endpoint when hit), drop A-A edges.
    a_part = _a_part(dec, matching)
    hit = {v for _, v in a_part}
    in_a = set(dec.A)
    reps = []
    for comp in dec.components:
        chosen = [v for v in comp if v in hit]
        if not chosen:
            chosen = [min(comp, key=lambda v: (-sum(1 for w in g.adj[v] if w in in_a), v))]
        reps.append(chosen[0])
    keep = sorted(set(dec.A) | set(reps))
    sub, labels = g.induced(keep)
    local_a = [i for i, v in enumerate(labels) if v in in_a]
    local_in_a = set(local_a)
    h = Graph(sub.n, tuple(e for e in sub.edges if (e[0] in local_in_a) != (e[1] in local_in_a)))
    rep = constructive.extract_bipartite_family(h, local_a, "fixed", cap=cfg.max_witnesses)
    extensions_ok = True
    witnesses = []
    for w in rep.witnesses:
        mapped = [(labels[u], labels[v]) for u, v in w]
        full = extend_to_maximum(g, dec, mapped)
        extensions_ok &= validate_matching(g, full, "maximum").ok
        witnesses.append(full)
    summary = rep.to_json()
    summary["witnesses"] = [[list(e) for e in w] for w in witnesses]
    summary["meets_bound"] = rep.emitted >= rep.target_bound
    summary["extensions_valid"] = extensions_ok
    return {"kind": "bipartite", **summary}


def _swap_extraction(g: Graph, matching, vertices, cfg: ExperimentConfig) -> dict:
    sub, labels = g.induced(vertices)
    index = {v: i for i, v in enumerate(labels)}
    inner = [(index[u], index[v]) for u, v in matching if u in index and v in index]
    outer = [e for e in matching if e[0] not in index and e[1] not in index]
    fam = constructive.build_swap_family(sub, inner)
    emitted = 0
    ok = True
    for pm in constructive.emit_swap_matchings(fam, cfg.swap_cap):
        full = tuple(sorted(outer + [(labels[u], labels[v]) for u, v in pm]))
        ok &= validate_matching(g, full, "maximum").ok
        emitted += 1
    summary = fam.to_json()
    summary.pop("swap_graph_edges")
    summary["base_matching"] = [[labels[u], labels[v]] for u, v in fam.base]
    summary["emitted"] = emitted
    summary["cap"] = cfg.swap_cap
    summary["extensions_valid"] = ok
    return {"kind": "swap", **summary}


def _lemma_extraction(g: Graph, dec: Decomposition, case: Optional[str], cfg: ExperimentConfig):
    if case not in ("case1", "case2", "case3"):
        return None
    matching = maximum_matching(g)
    if case == "case1":
        return _case1_extraction(g, dec, matching, cfg)
    if case == "case2":
        if not dec.C:
            return {"kind": "swap", "skipped": "C is empty"}
        return _swap_extraction(g, matching, dec.C, cfg)
    big = max(dec.components, key=lambda c: (len(c), -c[0]))
    mate = {}
    for u, v in matching:
        mate[u] = v
        mate[v] = u
    comp = set(big)
    loose = [v for v in big if mate.get(v) not in comp]
    rest = [v for v in big if v != loose[0]]
    if not rest:
        return {"kind": "swap", "skipped": "largest component is a single vertex"}
    return _swap_extraction(g, matching, rest, cfg)


def _count(g: Graph, dec: Decomposition, cfg: ExperimentConfig) -> tuple[Optional[int], str]:
    try:
        if cfg.counting_method == "decomposed":
            return count_maximum_matchings_decomposed(g, dec, cfg.max_a, cfg.max_component), "decomposed"
        return count_maximum_matchings(
            g, cfg.counting_method, cfg.max_a, cfg.max_component, cfg.brute_max_n
        )
    except TooLarge:
        return None, "too large"


def run_sample(cfg: ExperimentConfig, cell: tuple[int, int, int], index: int) -> dict:
    n, s, budget = cell
    seed = f"{cfg.seed}:{n}:{s}:{budget}:{index}"
    record: dict[str, Any] = {
        "instance": {"n": n, "s": s, "deficiency_budget": budget, "sample": index, "seed": seed},
    }
    started = time.perf_counter()
    try:
        kind, removed, g = _sample(n, s, budget, random.Random(seed), cfg.retry_budget)
        record["instance"].update({
            "base_family": kind,
            "degenerate": kind == "complete",
            "removed_edges": [list(e) for e in removed],
            "m": g.m,
        })
        dec = decompose(g)
        ver = verify_decomposition(g, dec)
        delta = None if cfg.case_delta == "theorem1" else Fraction(cfg.case_delta)
        rep = bounds.bound_report(g, dec, delta)
        record["decomposition"] = dec.to_json()
        record["decomposition_verified"] = ver.ok
        record["bounds"] = rep.to_json()

        count, method = _count(g, dec, cfg)
        record["count"] = str(count) if count is not None else "too large"
        record["count_method"] = method
        checks = {
            "decomposition": ver.ok,
            "matching_number": rep.s == s,
            "size_within_budget": g.m >= _target_size(kind, n, s) - budget,
            "chain": rep.chain_ok(),
            "lemma1": rep.lemma1_ok(),
        }
        if g.n <= cfg.brute_max_n:
            brute = count_maximum_matchings_bruteforce(g)
            try:
                dcount = count_maximum_matchings_decomposed(g, dec, cfg.max_a, cfg.max_component)
            except TooLarge:
                dcount = None
            record["crosscheck"] = {"brute": str(brute), "decomposed": None if dcount is None else str(dcount)}
            checks["methods_agree"] = dcount is None or dcount == brute
            if count is None:
                count = brute

        closed = base_closed_form(kind, n, s)
        record["base_closed_form"] = str(closed)
        if count is not None and g.n <= cfg.brute_max_n:
            losses = _removal_losses(kind, n, s, removed, cfg)
            record["removal_losses"] = [str(x) for x in losses]
            checks["loss_accounting"] = count == closed - sum(losses)
            checks["count_positive"] = count >= 1

        if s > 0:
            t1 = bounds.theorem1_bound(n, s)
            record["theorem1"] = {"applicable": t1.applicable, "tolerance": t1.tolerance, "bound": str(t1.bound)}
            eps = Fraction(cfg.epsilon)
            nu = Fraction(s, n)
            if nu < bounds.h_nu(eps):
                params = bounds.theorem2_thresholds(eps, nu)
                record["theorem2"] = {
                    "epsilon": str(eps),
                    "h_nu": str(params.h_nu),
                    "h_delta": str(params.h_delta),
                    "applicable": params.h_delta * n >= 1
                    and g.m >= bounds.eg_max_size(n, s) - params.h_delta * n * n,
                    "bound": str(bounds.theorem2_bound(n, s, eps)),
                }
        record["case"] = rep.case
        lemma = _lemma_extraction(g, dec, rep.case, cfg)
        if lemma is not None:
            record["lemma"] = lemma
            if "extensions_valid" in lemma:
                checks["lemma_extensions"] = lemma["extensions_valid"]
        record["checks"] = checks
        record["ok"] = all(checks.values())
    except Exception as exc:  # captured per record; the run continues
        record["error"] = f"{type(exc).__name__}: {exc}"
        record["ok"] = False
    record["_seconds"] = time.perf_counter() - started
    return record


def _removal_losses(kind: str, n: int, s: int, removed, cfg: ExperimentConfig) -> list[int]:
    # The loss from deleting uv is the number of maximum matchings through uv,
    # i.e. the maximum matchings of G - u - v when those have size s - 1.
    _, g = base_family(n, s)
    losses = []
    prev = count_maximum_matchings_decomposed(g, None, cfg.max_a, cfg.max_component)
    for u, v in removed:
        rest, _ = delete_vertices(g, [u, v])
        using = 0
        if matching_number(rest) == s - 1:
            using = count_maximum_matchings_decomposed(rest, None, cfg.max_a, cfg.max_component)
        g = remove_edges(g, [(u, v)])
        cur = count_maximum_matchings_decomposed(g, None, cfg.max_a, cfg.max_component)
        if prev - cur != using:
            raise AssertionError(f"removing {(u, v)} lost {prev - cur} matchings, expected {using}")
        losses.append(using)
        prev = cur
    return losses


def _run_indexed(args):
    cfg, cell, index = args
    return run_sample(cfg, cell, index)


def run_experiment(cfg: ExperimentConfig, workers: Optional[int] = None) -> tuple[list[dict], dict]:
    """Run every (cell, sample) job; returns records (timing stripped) and a summary."""
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    jobs = [(cfg, cell, i) for cell in cfg.grid for i in range(cfg.samples_per_cell)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_indexed, jobs))
    else:
        records = [_run_indexed(j) for j in jobs]
    timings = [r.pop("_seconds") for r in records]
    return records, summarize(records, timings)


def summarize(records: list[dict], timings: Optional[list[float]] = None) -> dict:
    cells: dict[tuple, dict] = {}
    for r in records:
        inst = r["instance"]
        key = (inst["n"], inst["s"], inst["deficiency_budget"])
        c = cells.setdefault(key, {"samples": 0, "ok": 0, "counts": [], "cases": {}})
        c["samples"] += 1
        c["ok"] += bool(r.get("ok"))
        if r.get("count", "too large") != "too large" and "count" in r:
            c["counts"].append(int(r["count"]))
        label = str(r.get("case"))
        c["cases"][label] = c["cases"].get(label, 0) + 1
    rows = []
    for (n, s, budget), c in cells.items():
        rows.append({
            "n": n, "s": s, "deficiency_budget": budget,
            "samples": c["samples"], "ok": c["ok"],
            "min_count": str(min(c["counts"])) if c["counts"] else None,
            "max_count": str(max(c["counts"])) if c["counts"] else None,
            "cases": c["cases"],
        })
    out = {"records": len(records), "ok": sum(bool(r.get("ok")) for r in records), "cells": rows}
    if timings is not None:
        out["seconds"] = round(sum(timings), 3)
    return out


def format_summary(summary: dict) -> str:
    lines = [f"{'n':>4} {'s':>3} {'def':>4} {'ok':>7} {'min count':>14} {'max count':>14}  cases"]
    for row in summary["cells"]:
        cases = ", ".join(f"{k}:{v}" for k, v in sorted(row["cases"].items()))
        lines.append(
            f"{row['n']:>4} {row['s']:>3} {row['deficiency_budget']:>4} "
            f"{row['ok']:>3}/{row['samples']:<3} {row['min_count'] or '-':>14} "
            f"{row['max_count'] or '-':>14}  {cases}"
        )
    lines.append(f"{summary['ok']}/{summary['records']} records passed")
    return "\n".join(lines)


def records_to_jsonl(records: list[dict]) -> str:
    return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)
