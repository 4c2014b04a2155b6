from math import factorial

import pytest

from hopf_toprec import correlators as C
from hopf_toprec.correlators import P, Q, QB, CorrRef, ext, ext_labels, q, qb
from hopf_toprec.linear import LinComb
from hopf_toprec.serialize import parse_graph as G, parse_tree as T
from hopf_toprec.trees import catalan

p1, p2, p3 = ext_labels(3)


def test_label_forms():
    assert [x.text() for x in (P, ext(2), Q, QB, q(3), qb(3))] == ["p", "p2", "q", "qb", "q3", "qb3"]
    assert qb(1).latex() == r"\bar q_1"
    with pytest.raises(ValueError):
        P.conjugate()
    assert q(2).conjugate() == qb(2)


def test_corr_ref():
    w = CorrRef(1, (P, p1))
    assert (w.k, w.euler, w.order) == (2, -2, 2)
    assert w.text() == "W[g=1,k=2](p,p1)"
    assert w.latex() == "W^1_2(p,p_1)"


def test_psi_tree():
    e = C.psi_tree(T("(|,|)"), (P, p1, p2))
    assert str(e) == "K[p;q1,qb1](W2(q1,p1), W2(qb1,p2))"
    e = C.psi_tree(T("((|,|),|)"), (P, p1, p2, p3))
    assert str(e) == "K[p;q1,qb1](K[q1;q2,qb2](W2(q2,p1), W2(qb2,p2)), W2(qb1,p3))"
    with pytest.raises(ValueError):
        C.psi_tree(T("(|,|)"), (P, p1))


def test_psi_graph_one_loop():
    e = C.psi_graph(G("(|,|);loops=[(0,1)]"), (P,))
    assert str(e) == "K[p;q1,qb1](W2(q1,qb1))"


def test_internal_labels_appear_twice():
    for x in C.expand_wg(1, 3).base:
        labs = C.labels_of(x)
        for i in range(1, C.kernel_count(x) + 1):
            assert labs.count(q(i)) == 2 and labs.count(qb(i)) == 2


def test_expand_w0_counts():
    for n in range(1, 5):
        s = C.expand_w0(n)
        assert s.count() == len(s.expand()) == catalan(n) * factorial(n + 1)


def test_expand_wg_counts():
    assert C.expand_wg(1, 3).count() == 32
    assert C.expand_wg(2, 3).count() == 5
    with pytest.raises(ValueError):
        C.expand_wg(3, 3)


def test_toprec_w04_text():
    step = C.toprec_rhs(0, (p1, p2, p3))
    assert step.text() == "K[p;q,qb](W[g=0,k=3](q,p1,p2)*W[g=0,k=2](qb,p3) + W[g=0,k=2](q,p1)*W[g=0,k=3](qb,p2,p3))"


def test_toprec_w12_terms():
    step = C.toprec_rhs(1, (p1,))
    assert [tuple(f.text() for f in t) for t in step.terms] == [
        ("W[g=0,k=3](q,qb,p1)",),
        ("W[g=1,k=1](q)", "W[g=0,k=2](qb,p1)"),
        ("W[g=0,k=2](q,p1)", "W[g=1,k=1](qb)"),
    ]


def test_toprec_rejects_stable_range():
    with pytest.raises(ValueError):
        C.toprec_rhs(0, (p1,))


def test_one_step_reproduces_planar_expansion():
    for n in range(2, 6):
        ref = CorrRef(0, (P,) + ext_labels(n + 1))
        assert C.toprec_rhs(0, ref.labels[1:]).expanded() == C.planar_expansion(ref)


def test_corr_coproduct_w04():
    d = C.corr_coproduct(2)
    assert len(d) == 4
    assert ((CorrRef(0, (P, p1, QB)), CorrRef(0, (QB, p2, p3)))) in d
    assert ((CorrRef(0, (Q, p1, p2)), CorrRef(0, (P, Q, p3)))) in d
    assert not C.corr_coproduct(1, reduced=True)


def test_admissibility():
    table = C.admissible_trees(2)
    assert sorted(map(str, (t for ts in table.values() for t in ts))) == ["((|,|),|)", "(|,(|,|))"]


def test_power_coproduct_realizes():
    from hopf_toprec import hopf
    for n in range(4):
        assert C.realize_powers(C.power_coproduct(n)) == hopf.coproduct(hopf.gen_power(n))


def test_corr_product():
    a, b = CorrRef(0, (P, p1, p2)), CorrRef(0, (P, p2, p3))
    assert C.corr_product(a, b) == LinComb.basis(CorrRef(0, (P, p1, p2, p3)))
    assert not C.corr_product(b, a)
    assert C.euler_of_product(a, b) == -2
    cyl = CorrRef(0, (P, p1))
    assert C.corr_product(cyl, b) == LinComb.basis(b)


def test_merge():
    for l in range(1, 4):
        for m in range(1, 5 - l):
            assert C.merge_matches_recursion(l, m)


def test_transported_antipode():
    for n in range(1, 5):
        ref = CorrRef(0, (P,) + ext_labels(n + 1))
        assert C.transported_antipode(ref) == LinComb.basis(ref, (-1) ** n)


def test_renumber_is_stable():
    e = C.psi_tree(T("((|,|),(|,|))"), (P, p1, p2, p3, ext(4)), start=5)
    assert C.renumber(e) == C.psi_tree(T("((|,|),(|,|))"), (P, p1, p2, p3, ext(4)))
