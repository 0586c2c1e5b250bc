"""Randomized invariant suites behind ``egmatch verify``.

Each suite takes a :class:`random.Random` and returns ``(name, passed, detail)``
triples.  They are smaller cousins of the pytest properties, meant for quick
sanity runs on an installed copy.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable

from . import bounds, constructive, counting, gallai_edmonds as ge, graph as gr, harness
from .matching import matching_number, maximum_matching, validate_matching

Result = tuple[str, bool, str]


def random_graph(rng: random.Random, n: int, p: float) -> gr.Graph:
    return gr.Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def brute_matching_number(g: gr.Graph) -> int:
    best = 0

    def rec(i: int, used: int, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + (len(g.edges) - i) <= best:
            return
        for j in range(i, len(g.edges)):
            u, v = g.edges[j]
            if not used >> u & 1 and not used >> v & 1:
                rec(j + 1, used | 1 << u | 1 << v, size + 1)

    rec(0, 0, 0)
    return best


def _corpus(rng: random.Random, count: int, max_n: int) -> list[gr.Graph]:
    return [random_graph(rng, rng.randint(1, max_n), rng.choice((0.15, 0.3, 0.5, 0.8))) for _ in range(count)]


def suite_graph(rng: random.Random) -> list[Result]:
    out = []
    gs = _corpus(rng, 40, 10)
    out.append(("complement involution", all(gr.complement(gr.complement(g)) == g for g in gs), ""))
    out.append(("edge-list round trip", all(gr.parse(gr.serialize(g)) == g for g in gs), ""))
    ok = all(
        gr.extremal_i(n, s).m == bounds.eg_max_size(n, s)
        for n in range(2, 15) for s in range(1, n // 2 + 1) if bounds.sparse_branch(n, s)
    ) and all(
        gr.extremal_ii(n, s).m == bounds.eg_max_size(n, s)
        for n in range(2, 15) for s in range(1, n // 2 + 1)
        if not bounds.sparse_branch(n, s) and 2 * s + 1 <= n
    )
    out.append(("extremal sizes", ok, ""))
    return out


def suite_matching(rng: random.Random) -> list[Result]:
    gs = _corpus(rng, 60, 11)
    bad = [g for g in gs if matching_number(g) != brute_matching_number(g)]
    out = [("matching number vs brute force", not bad, f"{len(bad)} mismatches")]
    ok = all(validate_matching(g, maximum_matching(g), "maximum").ok for g in gs)
    out.append(("maximum matching validates", ok, ""))
    drop_ok = all(
        matching_number(g) - matching_number(gr.delete_vertices(g, [u])[0]) in (0, 1)
        for g in gs[:20] for u in range(g.n)
    )
    out.append(("vertex deletion drops nu by at most one", drop_ok, ""))
    return out


def suite_decomposition(rng: random.Random) -> list[Result]:
    gs = _corpus(rng, 60, 11)
    same = all(ge.decompose(g) == ge.decompose_by_definition(g) for g in gs)
    verified = all(ge.verify_decomposition(g, ge.decompose(g)).ok for g in gs)
    closure_ok = True
    for g in gs:
        dec = ge.decompose(g)
        star = ge.closure(g, dec)
        closure_ok &= (
            matching_number(star) == matching_number(g)
            and star.m == ge.closure_size(g.n, dec)
            and ge.decompose(star) == dec
        )
    return [
        ("forest labels match the definition", same, ""),
        ("decomposition axioms", verified, ""),
        ("closure keeps decomposition", closure_ok, ""),
    ]


def suite_counting(rng: random.Random) -> list[Result]:
    gs = _corpus(rng, 50, 11)
    agree = all(
        counting.count_maximum_matchings_decomposed(g) == counting.count_maximum_matchings_bruteforce(g)
        for g in gs
    )
    closed = all(
        counting.count_maximum_matchings_bruteforce(gr.extremal_i(n, s)) == bounds.extremal_count("i", n, s)
        for n in range(2, 11) for s in range(1, min(4, n // 2) + 1)
    ) and all(
        counting.count_maximum_matchings_bruteforce(gr.extremal_ii(2 * s + 1, s)) == bounds.extremal_count("ii", 2 * s + 1, s)
        for s in range(1, 5)
    )
    return [("decomposed count equals enumeration", agree, ""), ("extremal closed forms", closed, "")]


def suite_bounds(rng: random.Random) -> list[Result]:
    ident = True
    for _ in range(500):
        n = rng.randint(2, 60)
        s = rng.randint(0, n // 2)
        a = rng.randint(0, s)
        k = n - 2 * s + a
        d = rng.randint(k, n - a)
        ident &= bounds.verify_lemma1_identity(n, s, a, d)
    lemma = True
    for _ in range(2000):
        n = rng.randint(10, 400)
        s = rng.randint(1, n // 2)
        nu = Fraction(s, n)
        x = nu * Fraction(rng.randint(0, 100), 100)
        y = 2 * x * Fraction(rng.randint(0, 100), 100)
        delta = Fraction(3, n) + Fraction(rng.randint(0, 100), 1000)
        if bounds.condition_e3_holds(x, y, nu, delta):
            lemma &= bounds.g_value(x, y, nu, not bounds.sparse_branch(n, s)) >= delta * delta
    t2 = True
    for _ in range(50):
        eps = Fraction(rng.randint(1, 99), 100)
        hn = bounds.h_nu(eps)
        nu = hn * Fraction(rng.randint(1, 99), 100)
        params = bounds.theorem2_thresholds(eps, nu)
        t2 &= bounds.theorem2_constraints_hold(eps, nu, params.h_delta)
    return [("lemma identity", ident, ""), ("delta lemma", lemma, ""), ("theorem-2 thresholds", t2, "")]


def suite_constructive(rng: random.Random) -> list[Result]:
    ok = True
    for _ in range(20):
        a, k = rng.randint(1, 4), rng.randint(5, 14)
        h = gr.complete_bipartite(a, k)
        budget = (8 * a * a) // 100
        drop = rng.sample(h.edges, min(budget, h.m))
        h2 = gr.remove_edges(h, drop)
        if matching_number(h2) < a:
            continue
        rep = constructive.extract_bipartite_family(h2, range(a), cap=None)
        ms = rep.witnesses
        ok &= len(set(ms)) == len(ms) == rep.emitted
        ok &= all(validate_matching(h2, m).ok for m in ms)
        ok &= rep.emitted <= counting.count_saturating_bipartite(h2, range(a))
        if rep.hypotheses_ok:
            ok &= rep.emitted >= rep.target_bound
    sw = True
    for p in range(3, 7):
        k_graph = gr.complete(2 * p)
        base = [(2 * i, 2 * i + 1) for i in range(p)]
        fam = constructive.build_swap_family(k_graph, base)
        outs = list(constructive.emit_swap_matchings(fam))
        sw &= len(outs) == constructive.count_all_matchings(fam.swap_graph)
        sw &= all(validate_matching(k_graph, m, "perfect").ok for m in outs)
    return [("bipartite extraction", ok, ""), ("swap family", sw, "")]


def suite_experiment(rng: random.Random) -> list[Result]:
    cfg = harness.ExperimentConfig(seed=rng.randrange(2**32), grid=[(9, 2, d) for d in range(4)], samples_per_cell=2)
    first, _ = harness.run_experiment(cfg, workers=1)
    second, _ = harness.run_experiment(cfg, workers=1)
    return [
        ("experiment records pass", all(r["ok"] for r in first), ""),
        ("experiment replay identical", harness.records_to_jsonl(first) == harness.records_to_jsonl(second), ""),
    ]


SUITES: dict[str, Callable[[random.Random], list[Result]]] = {
    "graph": suite_graph,
    "matching": suite_matching,
    "decomposition": suite_decomposition,
    "counting": suite_counting,
    "bounds": suite_bounds,
    "constructive": suite_constructive,
    "experiment": suite_experiment,
}


def run_suites(names: list[str], seed: int) -> list[tuple[str, str, bool, str]]:
    results = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        for check, passed, detail in SUITES[name](rng):
            results.append((name, check, passed, detail))
    return results
