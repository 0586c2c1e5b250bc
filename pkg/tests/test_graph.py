import pytest
from hypothesis import given

from conftest import graphs
from egmatch import graph as gr
from egmatch.bounds import eg_max_size, sparse_branch
from egmatch.matching import matching_number


def test_build_normalizes_and_dedups():
    g = gr.build_graph(4, [(0, 1), (1, 0)])
    assert g.edges == ((0, 1),)
    assert gr.build_graph(3, [(1, 2), (0, 1)]).edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("pairs", [[(0, 0)], [(0, 5)], [(-1, 1)]])
def test_build_rejects_bad_edges(pairs):
    with pytest.raises(gr.GraphError):
        gr.build_graph(2, pairs)


def test_generators():
    star = gr.generate("extremal_i", n=5, s=1)
    assert star.m == 4 and sorted(star.degree(v) for v in range(5)) == [1, 1, 1, 1, 4]
    k5 = gr.generate("extremal-ii", n=6, s=2)
    assert k5.m == 10 and k5.degree(5) == 0
    assert gr.generate("complete", n=1) == gr.empty(1)
    assert gr.complete_bipartite(2, 3).m == 6


def test_complement_examples():
    assert gr.complement(gr.complete(3)) == gr.empty(3)
    c = gr.complement(gr.extremal_i(5, 2))
    assert gr.is_isomorphic(c, gr.disjoint_union(gr.complete(3), gr.empty(2)))


def test_union_and_deletion():
    u = gr.disjoint_union(gr.complete(3), gr.empty(2))
    assert (u.n, u.m) == (5, 3)
    p = gr.path(3)
    assert gr.disjoint_union(gr.empty(0), p) == p
    assert gr.delete_vertices(gr.complete(4), [2])[0] == gr.complete(3)
    assert gr.delete_vertices(p, [])[0] == p
    rest, labels = gr.delete_vertices(p, [1])
    assert rest == gr.empty(2) and labels == [0, 2]


def test_remove_edges():
    assert gr.remove_edges(gr.complete(3), gr.complete(3).edges) == gr.empty(3)
    k4 = gr.complete(4)
    assert gr.remove_edges(k4, []) == k4
    g = gr.remove_edges(k4, [(0, 1)])
    assert g.m == 5 and matching_number(g) == 2
    with pytest.raises(gr.GraphError):
        gr.remove_edges(gr.path(3), [(0, 2)])


def test_parse_examples():
    assert gr.parse("3 2\n0 1\n1 2\n") == gr.path(3)
    with pytest.raises(gr.GraphError):
        gr.parse("3 2\n0 1\n")
    with pytest.raises(gr.GraphError):
        gr.parse("3 2\n0 1\n0 1\n")
    with pytest.raises(gr.GraphError):
        gr.parse("three\n")


def test_serialize_is_bit_exact():
    assert gr.serialize(gr.cycle(3)) == "3 3\n0 1\n0 2\n1 2\n"
    assert gr.serialize(gr.empty(2)) == "2 0\n"


def test_file_round_trip(tmp_path):
    g = gr.extremal_ii(9, 2)
    path = tmp_path / "g.el"
    gr.write_edge_list(g, str(path))
    assert path.read_bytes().endswith(b"\n") and b"\r" not in path.read_bytes()
    assert gr.read_edge_list(str(path)) == g


@given(graphs())
def test_complement_involution(g):
    assert gr.complement(gr.complement(g)) == g
    assert g.m + gr.complement(g).m == g.n * (g.n - 1) // 2


@given(graphs())
def test_parse_serialize_round_trip(g):
    text = gr.serialize(g)
    assert gr.parse(text) == g
    assert gr.serialize(gr.parse(text)) == text


@given(graphs(max_n=7))
def test_canonical_form_is_label_invariant(g):
    perm = list(reversed(range(g.n)))
    h = gr.build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert gr.canonical_form(g) == gr.canonical_form(h)


def test_extremal_sizes_and_matching_numbers():
    for n in range(2, 16):
        for s in range(1, n // 2 + 1):
            assert matching_number(gr.extremal_i(n, s)) == s
            if sparse_branch(n, s):
                assert gr.extremal_i(n, s).m == eg_max_size(n, s)
            if 2 * s + 1 <= n:
                assert matching_number(gr.extremal_ii(n, s)) == s
                if 5 * s >= 2 * n - 3:
                    assert gr.extremal_ii(n, s).m == eg_max_size(n, s)
