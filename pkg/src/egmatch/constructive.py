"""Constructive families of matchings.

* Bipartite extraction: from one A-saturating matching M, reroute a chosen
  subset A' of A into the vertices of K that M leaves free, keeping the M
  edges for the rest of A.
* Swap families: for a perfect matching M = {x_i y_i}, every matching N of
  the swap graph H (z_i ~ z_j iff x_i y_j and x_j y_i are edges) gives the
  perfect matching M(N) that replaces x_i y_i, x_j y_j by x_i y_j, x_j y_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt
from typing import Iterator, Optional, Sequence

from .bounds import falling_factorial
from .counting import BigCount, _injection_sum, bipartition_check
from .graph import Edge, Graph
from .matching import Matching, maximum_mate, mate_to_matching


class NoSaturatingMatching(ValueError):
    pass


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _ceil_minus_sqrt(r: Fraction, q: Fraction) -> int:
    """Exact ``ceil(r - sqrt(q))`` for rationals ``r`` and ``q >= 0``."""
    # Start from a float estimate and correct: N works iff r - N <= sqrt(q).
    def works(N: int) -> bool:
        t = r - N
        return t <= 0 or t * t <= q

    root = isqrt(q.numerator * q.denominator) / q.denominator if q else 0.0
    N = int(float(r) - root) - 2
    while not works(N):
        N += 1
    while works(N - 1):
        N -= 1
    return N


def _lemma_bound(top: int, length: int) -> BigCount:
    if length <= 0:
        return 1
    if top < length:
        return 0
    return falling_factorial(top, length)


@dataclass
class ExtractionReport:
    mode: str
    a: int
    k: int
    missing_edges: int
    base_matching: Matching
    A_prime: tuple[int, ...]
    target_bound: BigCount
    emitted: BigCount
    hypotheses: dict[str, bool]
    counting_argument: Optional[bool] = None
    a_side: tuple[int, ...] = ()
    free: dict[int, tuple[int, ...]] = field(default_factory=dict, repr=False)
    witnesses: list[Matching] = field(default_factory=list)

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.hypotheses.values())

    def stream(self, cap: Optional[int] = None) -> Iterator[Matching]:
        """All matchings of the family, lexicographic in the A' assignment."""
        base = dict(_oriented(self.base_matching, set(self.a_side)))
        rest = [(u, base[u]) for u in self.a_side if u not in self.A_prime]
        emitted = 0
        used: set[int] = set()
        pick: list[tuple[int, int]] = []

        def rec(i: int) -> Iterator[Matching]:
            if i == len(self.A_prime):
                yield tuple(sorted((min(p), max(p)) for p in pick + rest))
                return
            u = self.A_prime[i]
            for v in self.free[u]:
                if v not in used:
                    used.add(v)
                    pick.append((u, v))
                    yield from rec(i + 1)
                    pick.pop()
                    used.discard(v)

        for m in rec(0):
            yield m
            emitted += 1
            if cap is not None and emitted >= cap:
                return

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "a": self.a,
            "k": self.k,
            "missing_edges": self.missing_edges,
            "base_matching": [list(e) for e in self.base_matching],
            "A_prime": list(self.A_prime),
            "target_bound": str(self.target_bound),
            "emitted": str(self.emitted),
            "hypotheses": dict(self.hypotheses),
            "hypotheses_ok": self.hypotheses_ok,
            "counting_argument": self.counting_argument,
            "witnesses": [[list(e) for e in w] for w in self.witnesses],
        }


def _oriented(matching: Matching, a_side: set[int]) -> list[tuple[int, int]]:
    return [(u, v) if u in a_side else (v, u) for u, v in matching]


def extract_bipartite_family(
    h: Graph,
    side: Sequence[int],
    mode: str = "fixed",
    epsilon: Fraction | None = None,
    gamma: Fraction | None = None,
    cap: Optional[int] = 0,
) -> ExtractionReport:
    """Build the rerouting family for a near-complete bipartite graph.

    ``mode="fixed"`` uses the constants 1.1, 0.2 and 0.08; ``mode="parameterized"``
    needs ``epsilon`` and ``gamma``.  Hypothesis violations are recorded in
    the report and extraction still proceeds.  ``cap`` limits the witness list
    kept in the report (``None`` keeps all).
    """
    a_side, k_side = bipartition_check(h, side)
    a, k = len(a_side), len(k_side)
    base = mate_to_matching(maximum_mate(h))
    if len(base) != a:
        raise NoSaturatingMatching(f"no matching saturates A (best covers {len(base)} of {a})")
    covered = {x for e in base for x in e}
    free = {u: tuple(v for v in h.adj[u] if v not in covered) for u in a_side}
    missing = a * k - h.m

    if mode == "fixed":
        # Candidates need |N(u) - V(M)| >= k - 1.1a, i.e. 10|.| >= 10k - 11a.
        cands = [u for u in a_side if 10 * len(free[u]) >= 10 * k - 11 * a]
        top = _ceil(Fraction(10 * k - 11 * a, 10))
        length = min(_ceil(Fraction(a, 5)), top) if a else 0
        hypotheses = {
            "k_gt_1.1a": 10 * k > 11 * a,
            "missing_le_0.08a2": 100 * missing <= 8 * a * a,
        }
        enough = 5 * len(cands) >= a
        counting_arg = None
        if not enough:
            # Too few candidates forces m(H) < ak - 0.08a^2.
            counting_arg = 100 * h.m < 100 * a * k - 8 * a * a
            if not counting_arg:
                raise AssertionError("counting argument violated: m(H) >= ak - 0.08a^2")
    elif mode == "parameterized":
        if epsilon is None or gamma is None:
            raise ValueError("parameterized mode needs epsilon and gamma")
        eps, gam = Fraction(epsilon), Fraction(gamma)
        # deg(u) >= (1 - sqrt(gamma)) k  <=>  (k - deg)^2 <= gamma k^2.
        cands = [u for u in a_side if (k - h.degree(u)) ** 2 <= gam * k * k]
        top = _ceil_minus_sqrt((1 - eps / 2) * k, gam * k * k)
        length = _ceil_minus_sqrt((1 - eps / 2) * a, gam * a * a)
        hypotheses = {
            "eps_k_over_2_ge_a": eps * k / 2 >= a,
            "missing_le_gamma_ak": missing <= gam * a * k,
        }
        # |cands| >= (1 - sqrt(gamma)) a  <=>  a - |cands| <= 0 or (a - |cands|)^2 <= gamma a^2.
        short = a - len(cands)
        enough = short <= 0 or short * short <= gam * a * a
        counting_arg = None
        if not enough:
            counting_arg = h.m < (1 - gam) * a * k
            if not counting_arg:
                raise AssertionError("counting argument violated: m(H) >= (1 - gamma) ak")
    else:
        raise ValueError(f"unknown mode {mode!r}")

    cands.sort(key=lambda u: (-len(free[u]), u))
    chosen = tuple(sorted(cands[: max(length, 0)]))
    col = {v: j for j, v in enumerate(k_side)}
    weights = [[0] * len(chosen) for _ in k_side]
    for i, u in enumerate(chosen):
        for v in free[u]:
            weights[col[v]][i] = 1
    emitted = _injection_sum(len(chosen), weights, [1] * len(k_side))

    rep = ExtractionReport(
        mode=mode,
        a=a,
        k=k,
        missing_edges=missing,
        base_matching=base,
        A_prime=chosen,
        target_bound=_lemma_bound(top, length),
        emitted=emitted,
        hypotheses=hypotheses,
        counting_argument=counting_arg,
        a_side=tuple(a_side),
        free={u: free[u] for u in chosen},
    )
    if cap != 0:
        rep.witnesses = list(rep.stream(cap))
    return rep


# -- swap families ---------------------------------------------------------

@dataclass
class SwapFamily:
    graph: Graph
    base: tuple[Edge, ...]
    swap_graph: Graph
    X: tuple[int, ...]
    high_degree_count: int
    x_condition: bool

    @property
    def p(self) -> int:
        return len(self.base)

    @property
    def target_bound(self) -> BigCount:
        return factorial(_ceil(Fraction(447 * self.p, 1000)))

    def swap(self, n_matching: Sequence[tuple[int, int]]) -> Matching:
        pairs = list(self.base)
        for i, j in n_matching:
            xi, yi = self.base[i]
            xj, yj = self.base[j]
            pairs[i] = (min(xi, yj), max(xi, yj))
            pairs[j] = (min(xj, yi), max(xj, yi))
        return tuple(sorted(pairs))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "base_matching": [list(e) for e in self.base],
            "swap_graph_edges": [list(e) for e in self.swap_graph.edges],
            "swap_graph_size": self.swap_graph.m,
            "X": list(self.X),
            "high_degree_count": self.high_degree_count,
            "x_condition": self.x_condition,
            "target_bound": str(self.target_bound),
        }


def build_swap_family(k_graph: Graph, perfect: Sequence[tuple[int, int]]) -> SwapFamily:
    base = tuple(sorted((min(u, v), max(u, v)) for u, v in perfect))
    covered = [x for e in base for x in e]
    if k_graph.n % 2 or len(covered) != k_graph.n or len(set(covered)) != k_graph.n:
        raise ValueError("base is not a perfect matching of the graph")
    if any(not k_graph.has_edge(u, v) for u, v in base):
        raise ValueError("base uses a non-edge")
    p = len(base)
    zz = [
        (i, j)
        for i, j in itertools.combinations(range(p), 2)
        if k_graph.has_edge(base[i][0], base[j][1]) and k_graph.has_edge(base[j][0], base[i][1])
    ]
    swap = Graph(p, tuple(zz))

    # Peel vertices of degree < 0.895p, keep the ceil(0.447p) best survivors.
    alive = set(range(p))
    while True:
        drop = {v for v in alive if 1000 * sum(1 for w in swap.adj[v] if w in alive) < 895 * p}
        if not drop:
            break
        alive -= drop
    high = sum(1 for v in range(p) if 1000 * swap.degree(v) >= 895 * p)
    size = _ceil(Fraction(447 * p, 1000))
    ranked = sorted(alive, key=lambda v: (-swap.degree(v), v))
    X = tuple(sorted(ranked[:size]))
    inside = set(X)
    ok = len(X) == size and all(
        sum(1 for w in swap.adj[v] if w not in inside) >= size for v in X
    )
    return SwapFamily(k_graph, base, swap, X, high, ok)


def emit_swap_matchings(fam: SwapFamily, cap: Optional[int] = None) -> Iterator[Matching]:
    """Stream M(N) over matchings N of the swap graph, empty N first then
    lexicographic."""
    h = fam.swap_graph
    edges = h.edges
    used = [False] * h.n
    chosen: list[tuple[int, int]] = []
    seen: set[Matching] = set()
    count = 0

    def rec(start: int) -> Iterator[list[tuple[int, int]]]:
        yield chosen
        for idx in range(start, len(edges)):
            i, j = edges[idx]
            if used[i] or used[j]:
                continue
            used[i] = used[j] = True
            chosen.append((i, j))
            yield from rec(idx + 1)
            chosen.pop()
            used[i] = used[j] = False

    for nm in rec(0):
        out = fam.swap(nm)
        if out in seen:
            raise AssertionError(f"swap map not injective at N={nm}")
        seen.add(out)
        yield out
        count += 1
        if cap is not None and count >= cap:
            return


def count_all_matchings(g: Graph) -> BigCount:
    """Number of matchings of ``g`` (empty one included), by subset DP."""
    adj = g.adj_mask

    @lru_cache(maxsize=None)
    def z(mask: int) -> int:
        if mask == 0:
            return 1
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        total = z(rest)
        nbrs = adj[v] & rest
        while nbrs:
            bit = nbrs & -nbrs
            total += z(rest ^ bit)
            nbrs ^= bit
        return total

    return z((1 << g.n) - 1)
