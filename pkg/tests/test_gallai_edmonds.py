from fractions import Fraction

from hypothesis import given, settings

from conftest import brute_nu, graphs
from egmatch import graph as gr
from egmatch.gallai_edmonds import (
    Decomposition,
    closure,
    closure_size,
    decompose,
    decompose_by_definition,
    extend_to_maximum,
    is_factor_critical,
    stats,
    verify_decomposition,
)
from egmatch.matching import matching_number, maximum_matching, validate_matching


def test_examples():
    p3 = decompose(gr.path(3))
    assert (p3.D, p3.A, p3.C, p3.k) == ((0, 2), (1,), (), 2)
    k4 = decompose(gr.complete(4))
    assert (k4.D, k4.A, k4.C) == ((), (), (0, 1, 2, 3))
    c5 = decompose(gr.cycle(5))
    assert c5.D == tuple(range(5)) and c5.components == (tuple(range(5)),)


def test_verification_reports():
    c5 = gr.cycle(5)
    assert verify_decomposition(c5, decompose(c5)).ok
    bad = Decomposition((1, 2, 3, 4), (0,), (), ((1, 2, 3, 4),))
    rep = verify_decomposition(c5, bad)
    assert rep.checks["coverage"] and not rep.checks["D_definition"]
    k4 = gr.complete(4)
    rep = verify_decomposition(k4, Decomposition((), (), (), ()))
    assert not rep.checks["coverage"] and not rep.ok


def test_stats_examples():
    st = stats(gr.cycle(5), decompose(gr.cycle(5)))
    assert (st.n, st.s, st.a, st.k, st.x, st.y) == (5, 2, 0, 1, Fraction(2, 5), Fraction(4, 5))
    assert stats(gr.path(3), decompose(gr.path(3))).x == 0
    st = stats(gr.complete(4), decompose(gr.complete(4)))
    assert (st.x, st.y) == (Fraction(1, 2), 0)


def test_closure_examples():
    assert closure(gr.cycle(5), decompose(gr.cycle(5))) == gr.complete(5)
    p3 = gr.path(3)
    assert closure(p3, decompose(p3)) == p3
    assert closure_size(3, decompose(p3)) == 2
    assert closure(gr.complete(4), decompose(gr.complete(4))) == gr.complete(4)


def test_json_round_trip():
    dec = decompose(gr.extremal_i(7, 2))
    assert Decomposition.from_json(dec.to_json()) == dec


@given(graphs(max_n=10))
@settings(max_examples=250)
def test_forest_agrees_with_definition(g):
    dec = decompose(g)
    assert dec == decompose_by_definition(g)
    rep = verify_decomposition(g, dec)
    assert rep.ok, rep.details
    assert g.n - 2 * brute_nu(g) == dec.k - dec.a


@given(graphs(max_n=10))
@settings(max_examples=150)
def test_closure_properties(g):
    dec = decompose(g)
    star = closure(g, dec)
    assert set(g.edges) <= set(star.edges)
    assert star.m == closure_size(g.n, dec)
    assert matching_number(star) == matching_number(g)
    assert decompose(star) == dec


@given(graphs(max_n=10))
@settings(max_examples=150)
def test_ratio_invariants(g):
    st = stats(g, decompose(g))
    if g.n:
        assert 0 <= st.x <= st.nu and 0 <= st.y <= 2 * st.x


@given(graphs(max_n=10))
@settings(max_examples=150)
def test_components_are_factor_critical_and_extension_works(g):
    dec = decompose(g)
    for comp in dec.components:
        assert is_factor_critical(g.induced(comp)[0])
    m = maximum_matching(g)
    comp_of = dec.component_of()
    a_part = [e for e in m if (e[0] in dec.A) != (e[1] in dec.A)
              and (e[0] in comp_of or e[1] in comp_of)]
    full = extend_to_maximum(g, dec, a_part)
    assert validate_matching(g, full, "maximum").ok
