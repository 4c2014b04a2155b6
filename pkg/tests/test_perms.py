from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopf_toprec import perms
from hopf_toprec.linear import LinComb
from hopf_toprec.perms import EMPTY, Perm


def P(s):
    return Perm(int(c) for c in s)


def lc(*names):
    return LinComb((P(n) if n != "e" else EMPTY, 1) for n in names)


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        Perm((1, 1))


def test_text_forms():
    assert str(EMPTY) == "e"
    assert str(P("312")) == "312"
    assert str(Perm(range(1, 11))) == "1,2,3,4,5,6,7,8,9,10"


def test_std_and_decompose():
    assert perms.std([30, 10, 20]) == P("312")
    left, right, w = perms.decompose(P("312"), 1)
    assert (left, right) == (P("1"), P("21"))
    assert perms.compose(P("312"), w) == perms.cross(left, right)


def test_star_small():
    assert perms.star(lc("1"), lc("1")) == lc("12", "21")
    assert perms.star(lc("12"), lc("1")) == lc("123", "132", "231")


def test_coproduct_of_generator():
    d = perms.coproduct(lc("1"))
    assert d == LinComb([((EMPTY, P("1")), 1), ((P("1"), EMPTY), 1)])


def test_coproduct_312():
    d = perms.coproduct(lc("312"))
    want = LinComb([((EMPTY, P("312")), 1), ((P("1"), P("21")), 1),
                    ((P("12"), P("1")), 1), ((P("312"), EMPTY), 1)])
    assert d == want


def test_shuffle_counts():
    assert [perms.shuffle_count(p, 4 - p) for p in range(5)] == [1, 4, 6, 4, 1]
    assert len(perms.shuffles(2, 3)) == 10


def test_float_coefficients_refused():
    with pytest.raises(TypeError):
        LinComb([(P("1"), 0.5)])


perm_st = st.integers(0, 3).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(Perm)


@given(perm_st, perm_st, perm_st)
def test_star_associative(a, b, c):
    x, y, z = LinComb.basis(a), LinComb.basis(b), LinComb.basis(c)
    assert perms.star(perms.star(x, y), z) == perms.star(x, perms.star(y, z))


@given(perm_st, perm_st)
def test_star_term_count(a, b):
    prod = perms.star(LinComb.basis(a), LinComb.basis(b))
    assert sum(prod.coef(s) for s in prod) == perms.shuffle_count(len(a), len(b))


@given(perm_st)
def test_coproduct_has_n_plus_one_terms(s):
    assert sum(c for _, c in perms.coproduct_perm(s).items()) == Fraction(len(s) + 1)
