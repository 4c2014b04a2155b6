import json

import pytest
from hypothesis import given, strategies as st

from hopf_toprec import correlators as C, foissy, hopf, loops, perms, quantize
from hopf_toprec.linear import LinComb
from hopf_toprec.perms import Perm
from hopf_toprec.serialize import (ParseError, from_json, loads, parse_corr, parse_forest,
                                   parse_graph, parse_label, parse_perm, parse_tree, render, to_json)
from hopf_toprec.trees import GEN, enumerate_trees, from_perm_string


def test_parse_tree():
    assert parse_tree("(|,|)") == GEN
    assert parse_tree(" ( (|,|) , | ) ") == from_perm_string("12")


@pytest.mark.parametrize("text,offset", [("(|,(", 4), ("(|,|", 4), ("(|;|)", 2), ("x", 0), ("(|,|))", 5)])
def test_parse_tree_errors(text, offset):
    with pytest.raises(ParseError) as err:
        parse_tree(text)
    assert err.value.offset == offset


def test_parse_perm_forms():
    assert parse_perm("312") == parse_perm("(312)") == parse_perm("3,1,2") == Perm((3, 1, 2))
    assert parse_perm("e") == Perm()
    assert parse_perm("1,2,3,4,5,6,7,8,9,10") == Perm(range(1, 11))
    with pytest.raises(ParseError):
        parse_perm("113")
    with pytest.raises(ParseError):
        parse_perm("3a2")


def test_parse_graph():
    x = parse_graph("(|,|);loops=[(0,1)]")
    assert x == loops.LoopGraph(GEN, [(0, 1)])
    assert parse_graph("(|,|)") == loops.LoopGraph(GEN)
    with pytest.raises(ParseError):
        parse_graph("(|,|);loops=[(0,2)]")
    with pytest.raises(ParseError):
        parse_graph("(|,|);loops=[(0,1)x]")


def test_parse_forest_and_corr():
    assert parse_forest("1") == foissy.EMPTY_FOREST
    assert parse_forest("o[o] o") == parse_forest("•[•] •")
    assert parse_corr("W[g=0,k=3](p,p1,p2)") == C.CorrRef(0, (C.P, C.ext(1), C.ext(2)))
    assert parse_label("qb2") == C.qb(2) and parse_label("p'") == C.Label("root", 1)
    with pytest.raises(ParseError):
        parse_corr("W[g=0,k=2](p,p1,p2)")


def test_render_examples():
    one = LinComb.basis(Perm((1,)))
    assert render(perms.coproduct(one)) == "e (x) (1) + (1) (x) e"
    assert render(loops.LoopGraph(GEN, [(0, 1)])) == "(|,|);loops=[(0,1)]"
    assert render(quantize.build_W(1)) == "W3^0 + h*W1^1"
    assert render(LinComb.basis(GEN, -1)) == "-(|,|)"
    assert render(LinComb([(GEN, "1/2"), (from_perm_string("12"), -3)])) == "1/2*(|,|) - 3*((|,|),|)"
    assert render(LinComb()) == "0"
    assert render(hopf.tree(GEN), "latex") == r"(| \vee |)"


def test_render_canonical():
    a = LinComb([(GEN, 1), (from_perm_string("21"), 2)])
    b = LinComb([(from_perm_string("21"), 2), (GEN, 1)])
    assert render(a) == render(b) and render(a, "json") == render(b, "json")


def test_json_shapes():
    assert to_json(GEN) == {"left": {"leaf": True}, "right": {"leaf": True}}
    assert to_json(Perm((2, 1))) == {"perm": [2, 1]}
    assert to_json(loops.LoopGraph(GEN, [(0, 1)]))["loops"] == [[0, 1]]


def test_json_unknown():
    with pytest.raises(TypeError):
        to_json(object())
    with pytest.raises(ValueError):
        from_json({"nope": 1})


def test_round_trip_w_series_and_expressions():
    for n in range(1, 4):
        w = quantize.build_W(n)
        assert loads(render(w, "json")) == w
        for e in C.expand_wg(1, n + 1).base if n >= 1 else []:
            assert loads(json.dumps(to_json(e))) == e


objects = st.one_of(
    st.integers(0, 4).flatmap(lambda n: st.sampled_from(enumerate_trees(n))),
    st.integers(0, 4).flatmap(lambda n: st.sampled_from(perms.all_perms(n))),
    st.integers(0, 4).flatmap(lambda n: st.sampled_from(foissy.forests(n))),
    st.sampled_from([x for n in range(1, 5) for g in range(3) if n + 2 - 2 * g >= 1
                     for x in loops.enumerate_loop_graphs(n, g)]),
)


@given(objects)
def test_json_round_trip(x):
    assert loads(render(x, "json")) == x


@given(objects)
def test_text_round_trip(x):
    parse = {"Tree": parse_tree, "Perm": parse_perm, "Forest": parse_forest, "LoopGraph": parse_graph}
    assert parse[type(x).__name__](render(x)) == x


@given(st.lists(st.tuples(st.integers(0, 3).flatmap(lambda n: st.sampled_from(enumerate_trees(n))),
                          st.fractions(max_denominator=7)), max_size=5))
def test_lincomb_round_trip(terms):
    a = LinComb(terms)
    assert loads(render(a, "json")) == a
