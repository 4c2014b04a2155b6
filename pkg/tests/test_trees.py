from math import factorial

import pytest
from hypothesis import given, strategies as st

from hopf_toprec.perms import Perm, all_perms
from hopf_toprec.trees import (GEN, LEAF, Tree, catalan, enumerate_trees, fiber_size,
                               from_perm_string, graft, mirror, perm_to_tree, representative,
                               tree_to_perms, ungraft)


def test_interning():
    assert Tree(LEAF, LEAF) is GEN
    assert str(GEN) == "(|,|)"


def test_half_node_rejected():
    with pytest.raises(ValueError):
        Tree(LEAF, None)


def test_perm_to_tree_small():
    assert str(from_perm_string("12")) == "((|,|),|)"
    assert str(from_perm_string("21")) == "(|,(|,|))"
    assert str(from_perm_string("132")) == "((|,|),(|,|))"
    assert from_perm_string("e") is LEAF


def test_ungraft_leaf():
    with pytest.raises(ValueError):
        ungraft(LEAF)


def test_counts():
    assert [len(enumerate_trees(n)) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert catalan(10) == 16796


def test_fibers_partition_permutations():
    for n in range(6):
        seen = set()
        for t in enumerate_trees(n):
            fib = tree_to_perms(t)
            assert len(fib) == fiber_size(t)
            assert all(perm_to_tree(s) == t for s in fib)
            seen |= fib
        assert len(seen) == factorial(n) == len(all_perms(n))


def test_balanced_fiber():
    assert tree_to_perms(from_perm_string("132")) == {Perm((1, 3, 2)), Perm((2, 3, 1))}


tree_st = st.integers(0, 6).flatmap(lambda n: st.sampled_from(enumerate_trees(n)))


@given(tree_st)
def test_representative_in_fiber(t):
    assert perm_to_tree(representative(t)) == t


@given(tree_st)
def test_mirror_involution(t):
    assert mirror(mirror(t)) == t
    assert mirror(t).order == t.order


@given(tree_st, tree_st)
def test_graft_ungraft(a, b):
    assert ungraft(graft(a, b)) == (a, b)
