import itertools
import random

import pytest
from hypothesis import strategies as st

from egmatch.graph import Graph


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    picked = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, tuple(sorted(picked)))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def all_matchings(g: Graph):
    """Every matching of ``g``, as sorted edge tuples (oracle, tiny graphs only)."""
    out = []

    def rec(i, used, cur):
        out.append(tuple(cur))
        for j in range(i, g.m):
            u, v = g.edges[j]
            if not used >> u & 1 and not used >> v & 1:
                cur.append((u, v))
                rec(j + 1, used | 1 << u | 1 << v, cur)
                cur.pop()

    rec(0, 0, [])
    return out


def brute_nu(g: Graph) -> int:
    return max(len(m) for m in all_matchings(g))


def brute_max_matchings(g: Graph):
    ms = all_matchings(g)
    best = max(len(m) for m in ms)
    return [m for m in ms if len(m) == best]


@pytest.fixture
def rng():
    return random.Random(20261018)
