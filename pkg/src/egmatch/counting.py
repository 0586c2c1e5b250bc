"""Exact counting of maximum matchings.

Two independent routes: plain enumeration, and a product formula over the
Gallai-Edmonds decomposition (near-perfect matchings of each component,
A matched into distinct components, perfect matching of C).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .gallai_edmonds import Decomposition, decompose, is_factor_critical
from .graph import Graph
from .matching import Matching, matching_number

# Counts are plain Python ints (arbitrary precision).
BigCount = int

DEFAULT_MAX_A = 22
DEFAULT_MAX_COMPONENT = 24


class TooLarge(Exception):
    """A subproblem exceeds the configured feasibility thresholds."""


class NotFactorCritical(ValueError):
    pass


class NotBipartite(ValueError):
    pass


def enumerate_maximum_matchings(g: Graph, limit: int | None = None) -> Iterator[Matching]:
    """Yield each maximum matching once, in lexicographic edge-list order."""
    nu = matching_number(g)
    budget = g.n - 2 * nu
    n, adj = g.n, g.adj
    covered = [False] * n
    chosen: list[tuple[int, int]] = []
    emitted = 0

    # Branching on the smallest undecided vertex: matching it to a larger
    # neighbour (ascending) precedes leaving it exposed, which is exactly
    # lexicographic order on the sorted edge lists.
    def rec(v: int, exposed: int) -> Iterator[Matching]:
        while v < n and covered[v]:
            v += 1
        if v == n:
            yield tuple(chosen)
            return
        covered[v] = True
        for w in adj[v]:
            if w > v and not covered[w]:
                covered[w] = True
                chosen.append((v, w))
                yield from rec(v + 1, exposed)
                chosen.pop()
                covered[w] = False
        if exposed < budget:
            yield from rec(v + 1, exposed + 1)
        covered[v] = False

    for m in rec(0, 0):
        yield m
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def count_maximum_matchings_bruteforce(g: Graph) -> BigCount:
    return sum(1 for _ in enumerate_maximum_matchings(g))


def _count_pm_masks(adj_mask: Sequence[int], full: int) -> int:
    @lru_cache(maxsize=None)
    def pm(mask: int) -> int:
        if mask == 0:
            return 1
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        nbrs = adj_mask[v] & rest
        total = 0
        while nbrs:
            bit = nbrs & -nbrs
            total += pm(rest ^ bit)
            nbrs ^= bit
        return total

    return pm(full)


def count_perfect_matchings(g: Graph, max_component: int = DEFAULT_MAX_COMPONENT) -> BigCount:
    """Number of perfect matchings, by subset DP on each connected component."""
    if g.n % 2:
        return 0
    total = 1
    for comp in g.components():
        if len(comp) % 2:
            return 0
        if len(comp) > max_component:
            raise TooLarge(f"component of order {len(comp)} exceeds {max_component}")
        h, _ = g.induced(comp)
        total *= _count_pm_masks(h.adj_mask, (1 << h.n) - 1)
        if total == 0:
            return 0
    return total


@dataclass(frozen=True)
class NearPerfectProfile:
    """Per-vertex counts PM(G_i - v) for one factor-critical component.

    ``vertices`` uses the caller's labels; ``counts[j]`` belongs to
    ``vertices[j]``.
    """

    vertices: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def total(self) -> BigCount:
        return sum(self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.vertices, self.counts))


def near_perfect_profile(
    component: Graph,
    labels: Sequence[int] | None = None,
    max_component: int = DEFAULT_MAX_COMPONENT,
    check: bool = True,
) -> NearPerfectProfile:
    if component.n > max_component:
        raise TooLarge(f"component of order {component.n} exceeds {max_component}")
    if check and not is_factor_critical(component):
        raise NotFactorCritical("component is not factor-critical")
    full = (1 << component.n) - 1
    counts = tuple(
        _count_pm_masks(component.adj_mask, full ^ (1 << v)) for v in range(component.n)
    )
    if any(c == 0 for c in counts):
        raise NotFactorCritical("some vertex deletion leaves no perfect matching")
    if labels is None:
        labels = range(component.n)
    return NearPerfectProfile(tuple(labels), counts)


def bipartition_check(h: Graph, side: Sequence[int]) -> tuple[list[int], list[int]]:
    a_side = sorted(set(side))
    in_a = set(a_side)
    for u, v in h.edges:
        if (u in in_a) == (v in in_a):
            raise NotBipartite(f"edge ({u}, {v}) lies inside one side")
    return a_side, [v for v in range(h.n) if v not in in_a]


def _injection_sum(rows: int, weights: Sequence[Sequence[int]], idle: Sequence[int]) -> int:
    # Sum over injective maps f from the rows into the columns of
    # prod_r weights[col][r] * prod_{col not hit} idle[col].
    # Subset DP over rows, one column at a time: O(cols * rows * 2^rows).
    dp = {0: 1}
    full = (1 << rows) - 1
    for col, w in enumerate(weights):
        nxt: dict[int, int] = {}
        skip = idle[col]
        for mask, val in dp.items():
            if skip:
                nxt[mask] = nxt.get(mask, 0) + val * skip
            free = full ^ mask
            while free:
                bit = free & -free
                r = bit.bit_length() - 1
                if w[r]:
                    key = mask | bit
                    nxt[key] = nxt.get(key, 0) + val * w[r]
                free ^= bit
        dp = nxt
    return dp.get(full, 0)


def count_saturating_bipartite(h: Graph, side: Sequence[int], max_a: int = DEFAULT_MAX_A) -> BigCount:
    """Number of matchings of ``h`` covering every vertex of ``side``."""
    a_side, k_side = bipartition_check(h, side)
    if len(a_side) > max_a:
        raise TooLarge(f"|A| = {len(a_side)} exceeds {max_a}")
    row = {u: i for i, u in enumerate(a_side)}
    weights = []
    for v in k_side:
        w = [0] * len(a_side)
        for u in h.adj[v]:
            w[row[u]] = 1
        weights.append(w)
    return _injection_sum(len(a_side), weights, [1] * len(k_side))


def count_maximum_matchings_decomposed(
    g: Graph,
    dec: Decomposition | None = None,
    max_a: int = DEFAULT_MAX_A,
    max_component: int = DEFAULT_MAX_COMPONENT,
) -> BigCount:
    """Count maximum matchings as PM(G[C]) times a weighted injection sum.

    Every maximum matching is a near-perfect matching of each component of
    G[D], a matching of A into pairwise distinct components, and a perfect
    matching of G[C]; the weight of sending ``u`` into component ``i`` is
    the sum of PM(G_i - v) over neighbours ``v`` of ``u`` in ``G_i``.
    """
    if dec is None:
        dec = decompose(g)
    if dec.a > max_a:
        raise TooLarge(f"|A| = {dec.a} exceeds {max_a}")
    c_graph, _ = g.induced(dec.C)
    pm_c = count_perfect_matchings(c_graph, max_component)
    if pm_c == 0:
        return 0

    row = {u: i for i, u in enumerate(dec.A)}
    weights, idle = [], []
    for comp in dec.components:
        h, labels = g.induced(comp)
        prof = near_perfect_profile(h, labels, max_component, check=False)
        w = [0] * dec.a
        for v, cnt in zip(prof.vertices, prof.counts):
            for u in g.adj[v]:
                if u in row:
                    w[row[u]] += cnt
        weights.append(w)
        idle.append(prof.total)
    return pm_c * _injection_sum(dec.a, weights, idle)


def count_maximum_matchings(
    g: Graph,
    method: str = "auto",
    max_a: int = DEFAULT_MAX_A,
    max_component: int = DEFAULT_MAX_COMPONENT,
    brute_max_n: int = 16,
) -> tuple[BigCount, str]:
    """Count with the requested method; returns ``(count, method_used)``.

    ``auto`` tries the decomposed count, then enumeration for small graphs,
    and raises :class:`TooLarge` rather than approximating.
    """
    if method == "brute":
        return count_maximum_matchings_bruteforce(g), "brute"
    if method == "decomposed":
        return count_maximum_matchings_decomposed(g, None, max_a, max_component), "decomposed"
    if method != "auto":
        raise ValueError(f"unknown counting method {method!r}")
    try:
        return count_maximum_matchings_decomposed(g, None, max_a, max_component), "decomposed"
    except TooLarge:
        if g.n <= brute_max_n:
            return count_maximum_matchings_bruteforce(g), "brute"
        raise
