"""Gallai-Edmonds decomposition, its verification, closure and derived ratios."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import Graph, delete_vertices
from .matching import (
    Matching,
    even_vertices,
    matching_number,
    maximum_mate,
    mate_to_matching,
)


@dataclass(frozen=True)
class Decomposition:
    D: tuple[int, ...]
    A: tuple[int, ...]
    C: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def d(self) -> int:
        return len(self.D)

    @property
    def a(self) -> int:
        return len(self.A)

    @property
    def c(self) -> int:
        return len(self.C)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(comp) for comp in self.components)

    def component_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}

    def to_json(self) -> dict:
        return {
            "D": list(self.D),
            "A": list(self.A),
            "C": list(self.C),
            "components": [list(c) for c in self.components],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Decomposition":
        return cls(
            tuple(sorted(doc["D"])),
            tuple(sorted(doc["A"])),
            tuple(sorted(doc["C"])),
            tuple(sorted(tuple(sorted(c)) for c in doc["components"])),
        )


def _assemble(g: Graph, in_d: Sequence[bool]) -> Decomposition:
    D = [v for v in range(g.n) if in_d[v]]
    A = sorted({w for v in D for w in g.adj[v] if not in_d[w]})
    in_a = set(A)
    C = [v for v in range(g.n) if not in_d[v] and v not in in_a]
    sub, labels = g.induced(D)
    comps = tuple(tuple(labels[i] for i in comp) for comp in sub.components())
    return Decomposition(tuple(D), tuple(A), tuple(C), comps)


def decompose(g: Graph) -> Decomposition:
    """Decomposition read off the even labels of a maximal alternating forest."""
    return _assemble(g, even_vertices(g, maximum_mate(g)))


def decompose_by_definition(g: Graph) -> Decomposition:
    """Decomposition straight from D = {u : nu(G - u) = nu(G)}."""
    nu = matching_number(g)
    in_d = [matching_number(delete_vertices(g, [u])[0]) == nu for u in range(g.n)]
    return _assemble(g, in_d)


@dataclass
class VerificationReport:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks[name] = bool(passed)
        if detail:
            self.details[name] = detail

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks), "details": dict(self.details)}


def is_factor_critical(g: Graph) -> bool:
    if g.n % 2 == 0:
        return False
    half = (g.n - 1) // 2
    return all(matching_number(delete_vertices(g, [v])[0]) == half for v in range(g.n))


def verify_decomposition(g: Graph, dec: Decomposition) -> VerificationReport:
    """Check every defining property of ``dec``; failures are report entries."""
    rep = VerificationReport()
    parts = [set(dec.D), set(dec.A), set(dec.C)]
    covered = parts[0] | parts[1] | parts[2]
    disjoint = sum(map(len, parts)) == len(covered)
    rep.add(
        "coverage",
        disjoint and covered == set(range(g.n)),
        "" if disjoint and covered == set(range(g.n)) else "D, A, C do not partition V",
    )
    if not rep.checks["coverage"]:
        return rep

    nu = matching_number(g)
    true_d = {u for u in range(g.n) if matching_number(delete_vertices(g, [u])[0]) == nu}
    rep.add("D_definition", true_d == parts[0],
            "" if true_d == parts[0] else f"expected D={sorted(true_d)}")
    nbrs = {w for v in dec.D for w in g.adj[v]} - parts[0]
    rep.add("A_is_neighbourhood", nbrs == parts[1],
            "" if nbrs == parts[1] else f"N(D)-D={sorted(nbrs)}")

    sub, labels = g.induced(dec.D)
    true_comps = sorted(tuple(labels[i] for i in comp) for comp in sub.components())
    rep.add("components", true_comps == sorted(dec.components))

    bad = []
    for comp in dec.components:
        h, _ = g.induced(comp)
        if not is_factor_critical(h):
            bad.append(list(comp))
    rep.add("factor_critical", not bad, f"not factor-critical: {bad}" if bad else "")

    rep.add("deficiency_identity", g.n - 2 * nu == dec.k - dec.a,
            f"n-2nu={g.n - 2 * nu}, k-a={dec.k - dec.a}")

    m = mate_to_matching(maximum_mate(g))
    ok, why = structured_as_decomposition(g, dec, m)
    rep.add("maximum_matching_structure", ok, why)
    return rep


def structured_as_decomposition(g: Graph, dec: Decomposition, matching: Matching) -> tuple[bool, str]:
    """Does ``matching`` split into the three parts the decomposition predicts?

    Near-perfect inside each component, A matched into distinct components,
    perfect on C.
    """
    comp_of = dec.component_of()
    in_a, in_c = set(dec.A), set(dec.C)
    mate = {}
    for u, v in matching:
        mate[u] = v
        mate[v] = u
    hits: dict[int, int] = {}
    for u in dec.A:
        w = mate.get(u)
        if w is None or w not in comp_of:
            return False, f"A-vertex {u} not matched into D"
        i = comp_of[w]
        if i in hits:
            return False, f"component {i} hit twice from A"
        hits[i] = u
    for v in dec.C:
        if mate.get(v) not in in_c:
            return False, f"C-vertex {v} not matched inside C"
    for i, comp in enumerate(dec.components):
        inner = sum(1 for v in comp if mate.get(v) in comp and comp_of.get(mate[v]) == i)
        if inner != len(comp) - 1:
            return False, f"component {i} lacks a near-perfect matching"
    return True, ""


@dataclass(frozen=True)
class DecompositionStats:
    n: int
    s: int
    a: int
    c: int
    d: int
    k: int
    x: Fraction
    y: Fraction

    @property
    def nu(self) -> Fraction:
        return Fraction(self.s, self.n)


def stats(g: Graph, dec: Decomposition, s: int | None = None) -> DecompositionStats:
    if s is None:
        s = matching_number(g)
    n = g.n
    if n == 0:
        return DecompositionStats(0, 0, 0, 0, 0, 0, Fraction(0), Fraction(0))
    x = Fraction(s, n) - Fraction(dec.a, n)
    y = Fraction(dec.d - dec.k, n)
    nu = Fraction(s, n)
    if not (0 <= x <= nu and 0 <= y <= 2 * x):
        raise AssertionError(f"ratio invariants violated: x={x}, y={y}, nu={nu}")
    if dec.k != (1 - nu - x) * n:
        raise AssertionError("k != (1 - nu - x) n")
    return DecompositionStats(n, s, dec.a, dec.c, dec.d, dec.k, x, y)


def closure(g: Graph, dec: Decomposition) -> Graph:
    """Add every missing edge inside each component, between D and A, and
    inside A together with C."""
    added = set(g.edges)
    for comp in dec.components:
        added.update(itertools.combinations(comp, 2))
    added.update((min(u, v), max(u, v)) for u in dec.D for v in dec.A)
    added.update(itertools.combinations(sorted(dec.A + dec.C), 2))
    return Graph(g.n, tuple(sorted(added)))


def closure_size(n: int, dec: Decomposition) -> int:
    """Closed-form edge count of the closure."""
    return (
        sum(o * (o - 1) // 2 for o in dec.orders)
        + dec.d * dec.a
        + (n - dec.d) * (n - dec.d - 1) // 2
    )


def extend_to_maximum(g: Graph, dec: Decomposition, a_matching: Sequence[tuple[int, int]]) -> Matching:
    """Complete an A-into-D matching hitting distinct components to a maximum
    matching of ``g``.

    Each component gets a perfect matching of itself minus its hit vertex
    (or minus an arbitrary vertex if unhit) and C gets a perfect matching.
    """
    comp_of = dec.component_of()
    hit: dict[int, int] = {}
    pairs = []
    for u, v in a_matching:
        dv = v if v in comp_of else u
        i = comp_of[dv]
        if i in hit:
            raise ValueError(f"component {i} hit twice")
        hit[i] = dv
        pairs.append((u, v))
    for i, comp in enumerate(dec.components):
        skip = hit.get(i, comp[0])
        pairs.extend(_perfect_matching_of(g, [v for v in comp if v != skip]))
    pairs.extend(_perfect_matching_of(g, dec.C))
    return tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))


def _perfect_matching_of(g: Graph, vertices: Sequence[int]) -> list[tuple[int, int]]:
    h, labels = g.induced(vertices)
    mate = maximum_mate(h)
    if any(w == -1 for w in mate):
        raise ValueError("induced subgraph has no perfect matching")
    return [(labels[u], labels[v]) for u, v in mate_to_matching(mate)]
