"""Immutable simple graphs, the extremal families, and the edge-list format."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input or invalid generator parameters."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is a sorted tuple of pairs ``(u, v)`` with ``u < v``.  Use
    :func:`build_graph` to construct one from arbitrary pairs.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {e} is not normalized for n={self.n}")
            if prev is not None and e <= prev:
                raise GraphError("edges must be strictly increasing")
            prev = e

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour lists."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for r in range(self.n):
            if seen[r]:
                continue
            seen[r] = True
            stack = [r]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled ``0..len-1`` in increasing order.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} out of range for n={self.n}")
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(keep), tuple(sorted(edges))), keep


def _normalize(n: int, pairs: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    out = set()
    for pair in pairs:
        u, v = (int(t) for t in pair)
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        out.add((u, v) if u < v else (v, u))
    return tuple(sorted(out))


def build_graph(n: int, pairs: Iterable[Sequence[int]] = ()) -> Graph:
    """Build a graph from arbitrary vertex pairs, normalizing and deduplicating."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    return Graph(n, _normalize(n, pairs))


def complete(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def empty(n: int) -> Graph:
    return Graph(n, ())


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with the a-side on vertices ``0..a-1``."""
    return Graph(a + b, tuple((u, a + v) for u in range(a) for v in range(b)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complement(g: Graph) -> Graph:
    es = g.edge_set
    return Graph(
        g.n,
        tuple(e for e in itertools.combinations(range(g.n), 2) if e not in es),
    )


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return Graph(
        g1.n + g2.n,
        g1.edges + tuple((u + shift, v + shift) for u, v in g2.edges),
    )


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, list[int]]:
    """Delete ``removed`` and relabel the rest order-preservingly.

    The second return value maps each new label to its original vertex.
    """
    gone = set(removed)
    for v in gone:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    return g.induced(v for v in range(g.n) if v not in gone)


def remove_edges(g: Graph, removed: Iterable[Sequence[int]]) -> Graph:
    drop = set(_normalize(g.n, removed))
    missing = drop - g.edge_set
    if missing:
        raise GraphError(f"cannot remove non-edges {sorted(missing)}")
    return Graph(g.n, tuple(e for e in g.edges if e not in drop))


def add_edges(g: Graph, added: Iterable[Sequence[int]]) -> Graph:
    return Graph(g.n, tuple(sorted(g.edge_set | set(_normalize(g.n, added)))))


def extremal_i(n: int, s: int) -> Graph:
    """Clique on ``s`` vertices completely joined to ``n - s`` independent ones.

    Built as the complement of ``K_{n-s}`` plus ``s`` isolated vertices; the
    clique occupies vertices ``0..s-1``.
    """
    if s < 0 or 2 * s > n:
        raise GraphError(f"extremal_i needs 0 <= 2s <= n, got n={n}, s={s}")
    return complement(disjoint_union(empty(s), complete(n - s)))


def extremal_ii(n: int, s: int) -> Graph:
    """``K_{2s+1}`` plus ``n - 2s - 1`` isolated vertices."""
    if s < 0 or 2 * s + 1 > n:
        raise GraphError(f"extremal_ii needs 0 <= s and 2s+1 <= n, got n={n}, s={s}")
    return disjoint_union(complete(2 * s + 1), empty(n - 2 * s - 1))


GENERATOR_KINDS = ("complete", "empty", "complete_bipartite", "extremal_i", "extremal_ii")


def generate(kind: str, **params: int) -> Graph:
    """Dispatch to a named generator.

    ``complete``/``empty`` take ``n``; ``complete_bipartite`` takes ``a`` and
    ``b``; the extremal kinds take ``n`` and ``s``.
    """
    kind = kind.replace("-", "_")
    try:
        if kind == "complete":
            return complete(params["n"])
        if kind == "empty":
            return empty(params["n"])
        if kind == "complete_bipartite":
            return complete_bipartite(params["a"], params["b"])
        if kind == "extremal_i":
            return extremal_i(params["n"], params["s"])
        if kind == "extremal_ii":
            return extremal_ii(params["n"], params["s"])
    except KeyError as exc:
        raise GraphError(f"generator {kind!r} is missing parameter {exc.args[0]!r}") from None
    raise GraphError(f"unknown generator kind {kind!r}")


def canonical_form(g: Graph) -> tuple[Edge, ...]:
    """Lexicographically smallest relabelled edge list over all permutations.

    Exponential in ``n``; meant for the tiny graphs of the exhaustive checks.
    """
    best = None
    for perm in itertools.permutations(range(g.n)):
        form = tuple(sorted(
            (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
            for u, v in g.edges
        ))
        if best is None or form < best:
            best = form
    return best if best is not None else ()


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(map(len, g1.adj)) != sorted(map(len, g2.adj)):
        return False
    return canonical_form(g1) == canonical_form(g2)


# -- edge-list documents ---------------------------------------------------

def serialize(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Graph:
    """Parse an edge-list document: ``"<n> <m>"`` then ``m`` lines ``"<u> <v>"``."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GraphError("empty document")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphError(f"malformed header {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphError(f"malformed header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"count mismatch: header says {m} edges, found {len(body)}")
    pairs = []
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertices, got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
    edges = _normalize(n, pairs)
    if len(edges) != m:
        raise GraphError("duplicate edge in document")
    return Graph(n, edges)


def read_edge_list(path: str) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse(fh.read())


def write_edge_list(g: Graph, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize(g))
