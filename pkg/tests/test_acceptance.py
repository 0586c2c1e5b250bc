"""Acceptance criteria 1-9, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line (visible in
``pytest -v`` output) and then asserts.  Run alone with
``pytest tests/test_acceptance.py -v``.
"""

import itertools
import random
import time
from fractions import Fraction as F

import pytest

from conftest import all_matchings, random_graph
from egmatch import bounds, harness
from egmatch import graph as gr
from egmatch.constructive import (
    build_swap_family,
    count_all_matchings,
    emit_swap_matchings,
    extract_bipartite_family,
)
from egmatch.counting import (
    count_maximum_matchings_bruteforce,
    count_maximum_matchings_decomposed,
    count_perfect_matchings,
    count_saturating_bipartite,
)
from egmatch.gallai_edmonds import closure, decompose, decompose_by_definition
from egmatch.matching import matching_number, validate_matching


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


# -- 1 ----------------------------------------------------------------------

def test_criterion_1_extremal_closed_forms(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for n in range(1, 15):
        for s in range(0, min(4, n // 2) + 1):
            checked += 1
            got = count_maximum_matchings_bruteforce(gr.extremal_i(n, s))
            if got != bounds.falling_factorial(n - s, s):
                bad.append(("i", n, s, got))
        for s in range(0, 6):
            if 2 * s + 1 <= n:
                checked += 1
                got = count_maximum_matchings_bruteforce(gr.extremal_ii(n, s))
                want = bounds.extremal_count("ii", n, s)
                if got != want:
                    bad.append(("ii", n, s, got))
    secs = time.perf_counter() - t0
    report(capsys, 1, not bad and secs < 60,
           f"{checked} (family, n, s) pairs, mismatches={bad}, {secs:.1f}s (limit 60s)")


# -- 2 ----------------------------------------------------------------------

def _nu_table(n: int) -> tuple[list[tuple[int, int]], bytearray]:
    """Matching number of every labeled graph on n vertices, indexed by edge mask."""
    pairs = list(itertools.combinations(range(n), 2))
    touching = [
        sum(1 << j for j, f in enumerate(pairs) if set(e) & set(f)) for e in pairs
    ]
    nu = bytearray(1 << len(pairs))
    for mask in range(1, len(nu)):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        with_top = 1 + nu[rest & ~touching[top]]
        nu[mask] = max(nu[rest], with_top)
    return pairs, nu


def test_criterion_2_size_bound_exhaustive(capsys):
    t0 = time.perf_counter()
    violations, not_extremal, graphs_seen, equality = [], [], 0, 0
    engine_mismatch = 0
    for n in range(1, 8):
        pairs, nu = _nu_table(n)
        cap = [bounds.eg_max_size(n, s) for s in range(n // 2 + 1)]
        rng = random.Random(n)
        for mask in range(len(nu)):
            graphs_seen += 1
            s, m = nu[mask], mask.bit_count()
            if n <= 6 or rng.random() < 0.01:
                g = gr.Graph(n, tuple(p for j, p in enumerate(pairs) if mask >> j & 1))
                engine_mismatch += matching_number(g) != s
            if m > cap[s]:
                violations.append((n, mask))
            elif m == cap[s]:
                equality += 1
                g = gr.Graph(n, tuple(p for j, p in enumerate(pairs) if mask >> j & 1))
                fams = [gr.extremal_i(n, s)]
                if 2 * s + 1 <= n:
                    fams.append(gr.extremal_ii(n, s))
                if not any(f.m == m and gr.is_isomorphic(g, f) for f in fams):
                    not_extremal.append((n, g.edges))
    secs = time.perf_counter() - t0
    ok = not violations and not not_extremal and not engine_mismatch and secs < 600
    report(capsys, 2, ok,
           f"{graphs_seen} labeled graphs (n<=7), {equality} equality graphs, "
           f"violations={len(violations)}, non-extremal equality={len(not_extremal)}, "
           f"engine/table mismatches={engine_mismatch}, {secs:.1f}s (limit 600s)")


# -- 3 ----------------------------------------------------------------------

def test_criterion_3_oracle_equivalence(capsys):
    t0 = time.perf_counter()
    rng = random.Random(3)
    bad_dec = bad_count = total = 0
    for i in range(1000):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, (0.1, 0.25, 0.4, 0.6, 0.85)[i % 5])
        total += 1
        bad_dec += decompose(g) != decompose_by_definition(g)
        bad_count += count_maximum_matchings_decomposed(g) != count_maximum_matchings_bruteforce(g)
    secs = time.perf_counter() - t0
    report(capsys, 3, not bad_dec and not bad_count and secs < 300,
           f"{total} random graphs n<=12, decomposition mismatches={bad_dec}, "
           f"count mismatches={bad_count}, {secs:.1f}s (limit 300s)")


# -- 4 ----------------------------------------------------------------------

def test_criterion_4_algebraic_identities(capsys):
    t0 = time.perf_counter()
    rng = random.Random(4)
    failures = 0
    for _ in range(10_000):
        n = rng.randint(1, 2000)
        s = rng.randint(0, n // 2)
        a = rng.randint(0, s)
        k = n - 2 * s + a
        d = rng.randint(k, n - a)
        failures += not bounds.verify_lemma1_identity(n, s, a, d)
    secs = time.perf_counter() - t0
    report(capsys, 4, failures == 0 and secs < 60,
           f"10000 random (n, s, a, d) tuples, failures={failures}, {secs:.1f}s (limit 60s)")


# -- 5 ----------------------------------------------------------------------

def test_criterion_5_delta_lemma_grid(capsys):
    t0 = time.perf_counter()
    satisfying = exceptions = 0
    for n in range(8, 61):
        deltas = sorted({d for d in (F(3, n), F(4, n), F(1, 20), F(1, 10)) if d >= F(3, n)})
        for s in range(1, n // 2 + 1):
            nu = F(s, n)
            dense = not bounds.sparse_branch(n, s)
            for a in range(0, s + 1):
                k = n - 2 * s + a
                x = F(s - a, n)
                for d in range(k, n - a + 1):
                    y = F(d - k, n)
                    g = None
                    for delta in deltas:
                        if bounds.condition_e3_holds(x, y, nu, delta):
                            satisfying += 1
                            if g is None:
                                g = bounds.g_value(x, y, nu, dense)
                            exceptions += g < delta * delta
    secs = time.perf_counter() - t0
    report(capsys, 5, satisfying >= 100_000 and exceptions == 0,
           f"{satisfying} realizable grid points (n in 8..60, delta >= 3/n) satisfy the condition, "
           f"exceptions={exceptions}, {secs:.1f}s")


# -- 6 ----------------------------------------------------------------------

def _corpus():
    for n in range(0, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            yield gr.Graph(n, tuple(p for j, p in enumerate(pairs) if mask >> j & 1))
    rng = random.Random(6)
    for i in range(1000):
        yield random_graph(rng, rng.randint(6, 14), (0.1, 0.3, 0.5, 0.8)[i % 4])
    for n in range(2, 15):
        for s in range(1, n // 2 + 1):
            for budget in range(4):
                yield harness.sample_near_extremal(n, s, budget, seed=f"6:{n}:{s}:{budget}")


def test_criterion_6_deficiency_chain(capsys):
    t0 = time.perf_counter()
    count = bad_chain = bad_gap = bad_closure = 0
    for g in _corpus():
        count += 1
        dec = decompose(g)
        rep = bounds.bound_report(g, dec)
        bad_closure += closure(g, dec).m != rep.m_closure
        bad_chain += not (rep.m <= rep.m_closure <= rep.m_star <= rep.m_eg)
        bad_gap += not (rep.m_eg - rep.m_star >= rep.g * g.n * g.n - g.n)
    secs = time.perf_counter() - t0
    report(capsys, 6, not (bad_chain or bad_gap or bad_closure),
           f"{count} corpus graphs, chain failures={bad_chain}, gap failures={bad_gap}, "
           f"closure size mismatches={bad_closure}, {secs:.1f}s")


# -- 7 ----------------------------------------------------------------------

def _enumerate_saturating(h, side):
    side = list(side)
    out = 0

    def rec(i, used):
        nonlocal out
        if i == len(side):
            out += 1
            return
        for v in h.adj[side[i]]:
            if not used >> v & 1:
                rec(i + 1, used | 1 << v)

    rec(0, 0)
    return out


SHAPES = [(a, k) for a in range(1, 6) for k in (6, 10, 15, 20)]


def test_criterion_7_bipartite_extraction(capsys):
    t0 = time.perf_counter()
    rng = random.Random(7)
    instances = below_bound = invalid = over_count = oracle_mismatch = 0
    for a, k in SHAPES:
        base = gr.complete_bipartite(a, k)
        budget = (8 * a * a) // 100
        done = 0
        while done < 50:
            removed = rng.sample(base.edges, rng.randint(0, budget))
            h = gr.remove_edges(base, removed)
            if matching_number(h) < a:
                continue  # keep only instances where a saturating matching survives
            done += 1
            instances += 1
            rep = extract_bipartite_family(h, range(a), cap=None)
            ms = rep.witnesses
            invalid += len(set(ms)) != len(ms) or len(ms) != rep.emitted
            invalid += sum(
                not validate_matching(h, m).ok or len(m) != a for m in ms
            )
            below_bound += rep.emitted < rep.target_bound
            truth = count_saturating_bipartite(h, range(a))
            if truth <= 10_000 or done <= 2:
                oracle_mismatch += truth != _enumerate_saturating(h, range(a))
            over_count += rep.emitted > truth
    secs = time.perf_counter() - t0
    ok = not (below_bound or invalid or over_count or oracle_mismatch) and secs < 120
    report(capsys, 7, ok,
           f"{instances} instances over {len(SHAPES)} shapes (a<=5, k<=20), below bound={below_bound}, "
           f"invalid/duplicate={invalid}, emitted>true count={over_count}, "
           f"oracle mismatches={oracle_mismatch}, {secs:.1f}s (limit 120s)")


# -- 8 ----------------------------------------------------------------------

SWAP_CAP = 20_000


def test_criterion_8_swap_family(capsys):
    t0 = time.perf_counter()
    rng = random.Random(8)
    problems, emitted_total, exhaustive = [], 0, 0
    for p in range(3, 16):
        base = [(2 * i, 2 * i + 1) for i in range(p)]
        full = gr.complete(2 * p)
        drop = max(1, (p * (p - 1) // 2) // 100)
        g = gr.remove_edges(full, rng.sample([e for e in full.edges if e not in base], drop))
        fam = build_swap_family(g, base)
        outs = list(emit_swap_matchings(fam, None if p <= 6 else SWAP_CAP))
        emitted_total += len(outs)
        if len(set(outs)) != len(outs):
            problems.append((p, "duplicate"))
        if not all(validate_matching(g, m, "perfect").ok for m in outs):
            problems.append((p, "invalid"))
        if p <= 6:
            exhaustive += 1
            pms = {m for m in all_matchings(g) if len(m) == p}
            if len(outs) != count_all_matchings(fam.swap_graph) or not set(outs) <= pms:
                problems.append((p, "not injective into PM(G)"))
            if len(pms) != count_perfect_matchings(g):
                problems.append((p, "PM count"))
    secs = time.perf_counter() - t0
    report(capsys, 8, not problems,
           f"p=3..15, {emitted_total} perfect matchings emitted (cap {SWAP_CAP} for p>6), "
           f"exhaustive for {exhaustive} values of p<=6, problems={problems}, {secs:.1f}s")


# -- 9 ----------------------------------------------------------------------

def test_criterion_9_desk_scale_experiment(capsys):
    t0 = time.perf_counter()
    grid = [(n, s, d) for n in range(2, 15) for s in range(1, n // 2 + 1) for d in range(4)]
    cfg = harness.ExperimentConfig(seed=9, grid=grid, samples_per_cell=2)
    records, summary = harness.run_experiment(cfg)
    errors = [r["instance"] for r in records if "error" in r]
    no_case = [r["instance"] for r in records if r.get("case") not in ("none", "case1", "case2", "case3")]
    loss_fail = [r["instance"] for r in records if not r.get("checks", {}).get("loss_accounting")]
    failing = [r["instance"] for r in records if not r["ok"]]
    cases = {}
    for r in records:
        cases[r.get("case")] = cases.get(r.get("case"), 0) + 1
    secs = time.perf_counter() - t0
    ok = not (errors or no_case or loss_fail or failing)
    report(capsys, 9, ok,
           f"{len(records)} sampled instances (n<=14, deficiency 0..3): errors={len(errors)}, "
           f"unclassified={len(no_case)}, loss accounting failures={len(loss_fail)}, "
           f"other check failures={len(failing)}, cases={cases}, {secs:.1f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
