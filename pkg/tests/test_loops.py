import pytest
from hypothesis import given, strategies as st

from hopf_toprec import loops
from hopf_toprec.loops import ADJACENT, NESTED, LoopGraph, contract
from hopf_toprec.serialize import parse_graph as G, parse_tree as T
from hopf_toprec.trees import GEN, LEAF, catalan

BAL = T("((|,|),(|,|))")


def test_labels_and_genus():
    x = G("((|,|),(|,|));loops=[(1,2)]")
    assert (x.order, x.genus, x.labels) == (3, 1, 3)
    assert x.free_leaves() == [0, 3]


@pytest.mark.parametrize("pairs", [[(0, 2)], [(0, 1), (1, 2)], [(0, 2), (1, 3)], [(3, 5)]])
def test_invalid_loops(pairs):
    with pytest.raises(ValueError):
        LoopGraph(T("(((|,|),|),|)"), pairs)


def test_contract_edges():
    with pytest.raises(ValueError):
        contract(LoopGraph(LEAF), 0)
    with pytest.raises(IndexError):
        contract(LoopGraph(GEN), 2)
    assert contract(LoopGraph(GEN), 1) is None
    assert contract(LoopGraph(GEN), 0) == G("(|,|);loops=[(0,1)]")


def test_adjacent_rule_blocks_jump():
    x = G("((|,|),(|,|));loops=[(1,2)]")
    assert contract(x, 0) is None
    assert contract(x, 0, NESTED) is None  # only one free leaf on each side


@pytest.mark.parametrize("n,g,count", [(1, 1, 1), (2, 1, 4), (3, 1, 15), (3, 2, 5), (4, 1, 56), (4, 2, 42)])
def test_counts(n, g, count):
    assert len(loops.enumerate_loop_graphs(n, g)) == count


def test_w21_list():
    got = {str(x) for x in loops.enumerate_loop_graphs(3, 2)}
    assert got == {
        "(|,(|,(|,|)));loops=[(0,1),(2,3)]",
        "(|,((|,|),|));loops=[(0,1),(2,3)]",
        "((|,|),(|,|));loops=[(0,1),(2,3)]",
        "((|,(|,|)),|);loops=[(0,1),(2,3)]",
        "(((|,|),|),|);loops=[(0,1),(2,3)]",
    }


def test_nested_rule_is_larger_from_order_five():
    for n in range(3, 5):
        assert set(loops.enumerate_loop_graphs(n, 2, NESTED)) == set(loops.enumerate_loop_graphs(n, 2, ADJACENT))
    small = set(loops.enumerate_loop_graphs(5, 2, ADJACENT))
    big = set(loops.enumerate_loop_graphs(5, 2, NESTED))
    assert small < big
    assert any((1, 4) in x.loops for x in big - small)


def test_euler_guard():
    with pytest.raises(ValueError, match="Euler"):
        loops.enumerate_loop_graphs(1, 2)


def test_split_join():
    x = G("((|,|),(|,|));loops=[(1,2)]")
    g1, g2, bridged = loops.split(x)
    assert (g1, g2, bridged) == (LoopGraph(GEN), LoopGraph(GEN), True)
    assert loops.join(g1, g2, True) == x
    assert loops.join(G("(|,|);loops=[(0,1)]"), LoopGraph(GEN), True) is None


def test_split_rejects_far_bridge():
    with pytest.raises(ValueError):
        loops.split(LoopGraph(T("((((|,|),|),|),(|,(|,|)))"), [(3, 6), (4, 5)]))


def test_genus_split_multiplicities():
    for n in range(1, 6):
        for g in range(3):
            if n + 2 - 2 * g < 1:
                continue
            c = loops.genus_split(n, g)
            assert set(c) == set(loops.enumerate_loop_graphs(n, g))
            assert set(c.values()) <= {1}
            assert not loops.weight_anomalies(n, g)


def test_weights():
    heavy = [x for x in loops.enumerate_loop_graphs(3, 1) if loops.graph_weight(x) == 2]
    assert heavy == [G("((|,|),(|,|));loops=[(1,2)]")]
    assert loops.graph_weight(G("(|,|);loops=[(0,1)]")) == 1


def test_overcount():
    assert all(loops.derivation_overcount_check(n) for n in range(1, 6))


def test_ungraft():
    x = G("((|,(|,|)),|);loops=[(2,3)]")
    assert loops.ungraft_graph(x) == LoopGraph(T("(|,(|,|))"))
    with pytest.raises(ValueError):
        loops.ungraft_graph(LoopGraph(BAL))


def test_set_default_rule_round_trip():
    try:
        loops.set_default_rule(NESTED)
        assert loops.default_rule() is NESTED
    finally:
        loops.set_default_rule(ADJACENT)
    assert len(loops.enumerate_loop_graphs(3, 2)) == 5


graph_st = st.tuples(st.integers(1, 5), st.integers(0, 2)).filter(
    lambda ng: ng[0] + 2 - 2 * ng[1] >= 1).flatmap(lambda ng: st.sampled_from(loops.enumerate_loop_graphs(*ng)))


@given(graph_st)
def test_mirror_involution(x):
    assert loops.mirror_graph(loops.mirror_graph(x)) == x
    assert loops.mirror_graph(x).genus == x.genus


@given(graph_st)
def test_split_then_join(x):
    g1, g2, b = loops.split(x)
    assert loops.join(g1, g2, b) == x


@given(graph_st)
def test_ungraft_lowers_genus(x):
    if loops.root_bridged(x):
        y = loops.ungraft_graph(x)
        assert (y.order, y.genus, y.labels) == (x.order - 1, x.genus - 1, x.labels + 1)


def test_one_loop_count_formula():
    # every tree of order n has n adjacent positions
    for n in range(1, 6):
        assert len(loops.enumerate_loop_graphs(n, 1)) == n * catalan(n)
