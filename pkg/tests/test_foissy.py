import pytest

from hopf_toprec import foissy
from hopf_toprec.foissy import DOT, EMPTY_FOREST, forest, ladder, over, phi, under
from hopf_toprec.serialize import parse_forest as F, parse_tree as T
from hopf_toprec.trees import LEAF, catalan, enumerate_trees


def test_phi_small():
    assert phi(DOT) == T("(|,|)")
    assert phi(ladder(2)) == T("((|,|),|)")
    assert phi(forest(DOT, DOT)) == T("(|,(|,|))")
    assert phi(EMPTY_FOREST) == LEAF


def test_phi_type_error():
    with pytest.raises(TypeError):
        phi(LEAF)


def test_graftings():
    a, b = T("(|,|)"), T("((|,|),|)")
    assert under(a, b) == T("(|,((|,|),|))")
    assert over(a, b) == T("(((|,|),|),|)")
    assert under(LEAF, b) == b and over(a, LEAF) == a


def test_bijection():
    for n in range(8):
        assert len(foissy.forests(n)) == catalan(n)
        assert foissy.surjective(n)
        for t in enumerate_trees(n):
            assert phi(foissy.phi_inverse(t)) == t


def test_exp_series_frozen():
    s = foissy.exp_series(3)
    assert {str(f) for f in s[3]} == {"•[•[•]]", "•[•,•]", "•[•] •", "• •[•]", "• • •"}
    assert all(c == 1 for _, c in s[3].items())


def test_permutation_route_doubles_one_forest():
    rep = foissy.exp_series_comparison(3)
    assert [r["differences"] for r in rep[:3]] == [{}, {}, {}]
    assert rep[3]["differences"] == {"•[•] •": (1, 2)}
    assert phi(F("•[•] •")) == T("((|,|),(|,|))")


def test_associativity():
    assert foissy.associativity_report(3) == {"under": [], "over": []}


def test_ladder_rejects_zero():
    with pytest.raises(ValueError):
        ladder(0)
