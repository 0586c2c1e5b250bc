"""Maximum matching in general graphs (Edmonds' blossom contraction).

Matchings are handled as "mate" arrays internally (``mate[v] == -1`` for an
exposed vertex) and exposed to callers as sorted tuples of edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Edge, Graph

Matching = tuple[Edge, ...]


def normalize_matching(pairs: Iterable[Sequence[int]]) -> Matching:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))


def mate_to_matching(mate: Sequence[int]) -> Matching:
    return tuple((v, w) for v, w in enumerate(mate) if w > v)


class _Forest:
    """Alternating forest with blossom contraction over a mate array.

    ``alive`` masks out deleted vertices so the canonical greedy can work on
    shrinking residual graphs without rebuilding adjacency.
    """

    def __init__(self, g: Graph, mate: list[int], alive: list[bool] | None = None):
        self.g = g
        self.mate = mate
        self.alive = alive

    def _lca(self, a: int, b: int) -> int:
        mate, parent, base = self.mate, self.parent, self.base
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def _mark_path(self, v: int, b: int, child: int, blossom: list[bool]) -> None:
        mate, parent, base = self.mate, self.parent, self.base
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def _contract(self, v: int, w: int) -> None:
        b = self._lca(v, w)
        blossom = [False] * self.g.n
        self._mark_path(v, b, w, blossom)
        self._mark_path(w, b, v, blossom)
        base, even, tree = self.base, self.even, self.tree
        t = tree[b]
        for i in range(self.g.n):
            if blossom[base[i]]:
                base[i] = b
                if not even[i]:
                    even[i] = True
                    tree[i] = t
                    self.queue.append(i)

    def grow(self, roots: Iterable[int]) -> int:
        """Grow the forest from exposed ``roots``.

        Returns the far end of an augmenting path from a single-root search,
        or -1 when none exists; ``self.even`` then marks every even vertex.
        """
        n = self.g.n
        self.parent = parent = [-1] * n
        self.base = base = list(range(n))
        self.even = even = [False] * n
        self.tree = tree = [-1] * n
        self.queue = queue = deque()
        mate, alive, adj = self.mate, self.alive, self.g.adj
        for r in roots:
            even[r] = True
            tree[r] = r
            queue.append(r)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if (alive is not None and not alive[w]) or base[v] == base[w] or mate[v] == w:
                    continue
                if even[w]:
                    if tree[w] != tree[v]:
                        raise AssertionError(
                            "augmenting path between two trees: matching is not maximum"
                        )
                    self._contract(v, w)
                elif parent[w] == -1:
                    parent[w] = v
                    tree[w] = tree[v]
                    if mate[w] == -1:
                        return w
                    u = mate[w]
                    even[u] = True
                    tree[u] = tree[v]
                    queue.append(u)
        return -1

    def augment(self, end: int) -> None:
        mate, parent = self.mate, self.parent
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = nxt


def _greedy_mate(g: Graph) -> list[int]:
    mate = [-1] * g.n
    for u, v in g.edges:
        if mate[u] == -1 and mate[v] == -1:
            mate[u] = v
            mate[v] = u
    return mate


def _maximize(g: Graph, mate: list[int], alive: list[bool] | None = None) -> list[int]:
    # One search per exposed vertex suffices: a vertex with no augmenting
    # path never regains one after later augmentations.
    forest = _Forest(g, mate, alive)
    for r in range(g.n):
        if mate[r] != -1 or (alive is not None and not alive[r]):
            continue
        end = forest.grow([r])
        if end != -1:
            forest.augment(end)
    return mate


def maximum_mate(g: Graph) -> list[int]:
    """A maximum matching as a mate array; deterministic but not canonical."""
    return _maximize(g, _greedy_mate(g))


def matching_number(g: Graph) -> int:
    return sum(1 for v, w in enumerate(maximum_mate(g)) if w > v)


def _canonical_mate(g: Graph) -> list[int]:
    # Greedy over edges in canonical order: keep uv iff the residual graph
    # minus u and v still has a matching one smaller.  The current residual
    # maximum matching is repaired by at most one augmentation per test.
    mate = maximum_mate(g)
    alive = [True] * g.n
    chosen: list[Edge] = []
    for u, v in g.edges:
        if not (alive[u] and alive[v]):
            continue
        if mate[u] == v:
            ok = True
            trial = mate
        else:
            trial = list(mate)
            freed = []
            for x in (u, v):
                if trial[x] != -1:
                    freed.append(trial[x])
                    trial[trial[x]] = -1
                    trial[x] = -1
            alive[u] = alive[v] = False
            ok = len(freed) < 2
            if not ok:
                forest = _Forest(g, trial, alive)
                for r in freed:
                    end = forest.grow([r])
                    if end != -1:
                        forest.augment(end)
                        ok = True
                        break
            alive[u] = alive[v] = True
        if ok:
            if trial is mate:
                mate = list(mate)
            else:
                mate = trial
            mate[u] = mate[v] = -1
            alive[u] = alive[v] = False
            chosen.append((u, v))
    out = [-1] * g.n
    for u, v in chosen:
        out[u] = v
        out[v] = u
    return out


def maximum_matching(g: Graph, canonical: bool = True) -> Matching:
    """Return a maximum matching of ``g`` as a sorted tuple of edges.

    With ``canonical`` (the default) the result is the lexicographically
    smallest maximum matching under the sorted edge order; this costs one
    augmenting-path search per edge.  ``canonical=False`` returns whatever
    the blossom search produces, which is still deterministic.
    """
    mate = _canonical_mate(g) if canonical else maximum_mate(g)
    return mate_to_matching(mate)


def even_vertices(g: Graph, mate: Sequence[int]) -> list[bool]:
    """Even labels of the alternating forest grown from all exposed vertices.

    ``mate`` must be maximum.  The even vertices are exactly the vertices
    missed by some maximum matching.
    """
    forest = _Forest(g, list(mate))
    roots = [v for v in range(g.n) if mate[v] == -1]
    if forest.grow(roots) != -1:
        raise AssertionError("matching passed to even_vertices is not maximum")
    return forest.even


def has_augmenting_path(g: Graph, matching: Iterable[Sequence[int]]) -> bool:
    mate = [-1] * g.n
    for u, v in matching:
        mate[u] = v
        mate[v] = u
    forest = _Forest(g, mate)
    for r in range(g.n):
        if mate[r] == -1 and forest.grow([r]) != -1:
            return True
    return False


@dataclass
class MatchingCheck:
    """Outcome of :func:`validate_matching`.

    ``valid`` is False when the pairs are not a matching of the graph at all;
    ``ok`` additionally requires the requested mode (perfect / maximum).
    """

    valid: bool
    ok: bool
    reason: str = ""
    size: int = 0
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_matching(g: Graph, pairs: Iterable[Sequence[int]], mode: str = "any") -> MatchingCheck:
    if mode not in ("any", "perfect", "maximum"):
        raise ValueError(f"unknown mode {mode!r}")
    problems = []
    used: set[int] = set()
    size = 0
    for pair in pairs:
        u, v = pair
        size += 1
        if u == v or not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            problems.append(f"({u}, {v}) is not an edge")
            continue
        for x in (u, v):
            if x in used:
                problems.append(f"vertex {x} is covered twice")
            used.add(x)
    if problems:
        return MatchingCheck(False, False, "invalid: " + "; ".join(problems), size, problems)
    if mode == "perfect" and 2 * size != g.n:
        return MatchingCheck(True, False, f"not perfect: covers {2 * size} of {g.n} vertices", size)
    if mode == "maximum":
        nu = matching_number(g)
        if size != nu:
            return MatchingCheck(True, False, f"not maximum: size {size}, matching number {nu}", size)
    return MatchingCheck(True, True, "ok", size)
