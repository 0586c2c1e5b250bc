import random

import pytest
from hypothesis import given, settings

from conftest import brute_max_matchings, brute_nu, graphs, random_graph
from egmatch import graph as gr
from egmatch.matching import (
    has_augmenting_path,
    matching_number,
    maximum_matching,
    validate_matching,
)


def test_examples():
    k4 = gr.complete(4)
    m = maximum_matching(k4)
    assert len(m) == 2 and validate_matching(k4, m, "perfect").ok
    assert maximum_matching(gr.empty(5)) == ()
    assert len(maximum_matching(gr.cycle(5))) == 2
    assert matching_number(gr.path(3)) == 1
    assert matching_number(gr.extremal_ii(6, 2)) == 2
    assert matching_number(gr.complete_bipartite(3, 7)) == 3


def test_validate_modes():
    k4 = gr.complete(4)
    assert validate_matching(k4, [(0, 1), (2, 3)], "perfect")
    short = validate_matching(k4, [(0, 1)], "maximum")
    assert short.valid and not short.ok
    shared = validate_matching(gr.path(3), [(0, 1), (1, 2)], "any")
    assert not shared.valid
    missing = validate_matching(gr.path(3), [(0, 2)])
    assert not missing.valid and missing.reason != short.reason


def test_blossom_needs_contraction():
    # Triangle with a pendant path: greedy picks badly, augmentation runs through the blossom.
    g = gr.build_graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (0, 5)])
    assert matching_number(g) == 3


@given(graphs(max_n=10))
@settings(max_examples=300)
def test_matching_number_matches_oracle(g):
    m = maximum_matching(g)
    assert len(m) == brute_nu(g)
    assert validate_matching(g, m, "maximum").ok
    assert not has_augmenting_path(g, m)


@given(graphs(max_n=8))
@settings(max_examples=150)
def test_canonical_is_lexicographically_smallest(g):
    assert maximum_matching(g) == min(brute_max_matchings(g))


@given(graphs(min_n=1, max_n=10))
def test_deleting_a_vertex_drops_nu_by_at_most_one(g):
    nu = matching_number(g)
    for u in range(g.n):
        assert nu - matching_number(gr.delete_vertices(g, [u])[0]) in (0, 1)


@pytest.mark.parametrize("n", [20, 40, 60])
def test_larger_random_graphs_have_no_augmenting_path(n):
    rng = random.Random(n)
    for p in (0.05, 0.1, 0.3):
        g = random_graph(rng, n, p)
        m = maximum_matching(g, canonical=False)
        assert validate_matching(g, m).valid
        assert not has_augmenting_path(g, m)
        assert len(m) == matching_number(g)
