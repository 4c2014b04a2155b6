"""Self-checks behind ``hopf-toprec check``: one suite per acceptance area.

Every suite returns a list of ``(name, ok, detail)`` lines.  Reference
values are frozen literals here, not recomputed by the code under test.
"""

from __future__ import annotations

import re
from math import factorial
from typing import Callable

from . import correlators as corr
from . import foissy, hopf, loops, perms, quantize
from .correlators import CorrRef, P, ext_labels
from .linear import LinComb, apply_at, tensor
from .loops import LoopGraph
from .perms import Perm
from .trees import GEN, LEAF, Tree, catalan, enumerate_trees, fiber_size, perm_to_tree

Line = tuple[str, bool, str]


def _trees_upto(n: int) -> list[Tree]:
    return [t for k in range(n + 1) for t in enumerate_trees(k)]


def _tree(s: str) -> Tree:
    from .serialize import parse_tree
    return parse_tree(s)


def _first(items, limit: int = 3) -> str:
    items = list(items)
    shown = ", ".join(str(x) for x in items[:limit])
    return f"{len(items)} failures: {shown}" if items else "ok"


# -- 1: Hopf axioms

def suite_hopf(max_order: int = 5) -> list[Line]:
    trees = _trees_upto(max_order)
    out: list[Line] = []

    bad = [(a, b, c) for a in trees for b in trees for c in trees
           if a.order + b.order + c.order <= max_order
           and hopf.star(hopf.star(hopf.tree(a), hopf.tree(b)), hopf.tree(c))
           != hopf.star(hopf.tree(a), hopf.star(hopf.tree(b), hopf.tree(c)))]
    out.append(("associativity of *", not bad, _first(bad)))

    bad = []
    for t in trees:
        d = hopf.coproduct_basis(t)
        if apply_at(d, 0, hopf.coproduct_basis) != apply_at(d, 1, hopf.coproduct_basis):
            bad.append(t)
    out.append(("coassociativity of Delta", not bad, _first(bad)))

    bad = [(a, b) for a in trees for b in trees if a.order + b.order <= max_order
           and hopf.coproduct(hopf.star_basis(a, b))
           != hopf.tensor_star(hopf.coproduct_basis(a), hopf.coproduct_basis(b))]
    out.append(("Delta(a*b) = Delta(a)*Delta(b)", not bad, _first(bad)))

    def eps(x: Tree) -> LinComb:
        return LinComb.basis((), hopf.counit(hopf.tree(x)))

    bad = []
    for t in trees:
        d = hopf.coproduct_basis(t)
        left = apply_at(d, 0, eps).map_basis(lambda k: k[0])
        right = apply_at(d, 1, eps).map_basis(lambda k: k[0])
        if left != hopf.tree(t) or right != hopf.tree(t):
            bad.append(t)
    out.append(("counit laws", not bad, _first(bad)))

    bad = []
    for t in trees:
        unit = hopf.ONE.scale(hopf.counit(hopf.tree(t)))
        for side in ("left", "right"):
            if hopf.convolution_identity(hopf.tree(t), side) != unit:
                bad.append((t, side))
    out.append(("m(S (x) Id)Delta = eta eps, both sides", not bad, _first(bad)))

    bad = [(a, b) for a in trees for b in trees if a.order + b.order <= max_order
           and hopf.embed(hopf.star_basis(a, b))
           != perms.star(hopf.embed(hopf.tree(a)), hopf.embed(hopf.tree(b)))]
    out.append(("fiber sums multiply as in k[S]", not bad, _first(bad)))
    return out


# -- 2: dimensions

def suite_catalan() -> list[Line]:
    frozen = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012]
    got = [len(enumerate_trees(n)) for n in range(13)]
    out = [("|Y^n| = Catalan(n), n <= 12", got == frozen, str(got))]
    out.append(("closed form (2n)!/(n!(n+1)!)", all(catalan(n) == frozen[n] for n in range(13)), "ok"))
    sizes = [sum(fiber_size(t) for t in enumerate_trees(n)) for n in range(7)]
    out.append(("fiber sizes sum to n!, n <= 6", sizes == [factorial(n) for n in range(7)], str(sizes)))
    direct = all(
        sum(len(perms_of) for perms_of in [[s for s in perms.all_perms(n) if perm_to_tree(s) == t]]) == fiber_size(t)
        for n in range(6) for t in enumerate_trees(n)
    )
    out.append(("fiber sizes agree with brute force, n <= 5", direct, "ok"))
    return out


# -- 3: the order-3 product

SIX = ["123", "132", "213", "231", "312", "321"]


def suite_golden() -> list[Line]:
    one = LinComb.basis(Perm((1,)))
    prod = perms.star(perms.star(one, one), one)
    expected = LinComb((Perm(int(c) for c in s), 1) for s in SIX)
    out = [("(1)*(1)*(1) in k[S] is the six permutations", prod == expected, str(len(prod)))]
    pushed = hopf.push(prod)
    t132 = perm_to_tree(Perm((1, 3, 2)))
    ok = (len(pushed) == 5 and pushed.coef(t132) == 2
          and all(c == 1 for t, c in pushed.items() if t != t132)
          and t132 == _tree("((|,|),(|,|))"))
    out.append(("pushed to k[Y]: five trees, coefficient 2 on tree(132)", ok, str(pushed.coef(t132))))
    out.append(("fiber sum of (1)^3 in k[Y] embeds to the same six", hopf.embed(hopf.gen_power(3)) == expected, "ok"))
    return out


# -- 4: antipode

def suite_antipode(max_power: int = 6) -> list[Line]:
    gen = hopf.tree(GEN)
    t12, t21 = hopf.tree(_tree("((|,|),|)")), hopf.tree(_tree("(|,(|,|))"))
    out = [
        ("S((1)) = -(1)", hopf.antipode(gen) == -gen, "ok"),
        ("S(tree(12)) = tree(21)", hopf.antipode(t12) == t21, "ok"),
        ("S(tree(21)) = tree(12)", hopf.antipode(t21) == t12, "ok"),
    ]
    bad = [n for n in range(max_power + 1)
           if hopf.antipode(hopf.gen_power(n)) != hopf.gen_power(n).scale((-1) ** n)]
    out.append((f"S((1)^n) = (-1)^n (1)^n, n <= {max_power}", not bad, _first(bad)))
    return out


# -- 5: reduced coproduct

def _perm_reduced(s: Perm) -> LinComb:
    if not s.images:
        return LinComb()
    return perms.coproduct_perm(s) - LinComb([((perms.EMPTY, s), 1), ((s, perms.EMPTY), 1)])


def suite_reduced(max_power: int = 5) -> list[Line]:
    out = [("Delta' W^0_3 = 0", hopf.is_primitive(hopf.tree(GEN)) and not corr.corr_coproduct(1, reduced=True), "ok")]
    gen = hopf.tree(GEN)
    one = LinComb.basis(Perm((1,)))
    bad = []
    for n in range(1, max_power + 1):
        oracle = tensor(*[gen] * n).scale(factorial(n))
        got = hopf.iterated_reduced(hopf.gen_power(n), n - 1) if n > 1 else tensor(gen)
        # the same iteration in k[S], read back factor by factor
        p = LinComb.basis(perms.EMPTY)
        for _ in range(n):
            p = perms.star(p, one)
        p = p.map_basis(lambda s: (s,))
        for _ in range(n - 1):
            p = apply_at(p, 0, _perm_reduced)
        via_perms = p.map_basis(lambda k: tuple(perm_to_tree(s) for s in k))
        if got != oracle or via_perms != oracle:
            bad.append(n)
    out.append((f"Delta'^(n-1)((1)^n) = n! (1)^(x)n, n <= {max_power}", not bad, _first(bad)))
    norm = all(hopf.iterated_reduced_normalized(n) == tensor(*[gen] * n) for n in range(2, max_power + 1))
    out.append(("unit coefficients after dividing by n!", norm, "ok"))
    return out


# -- 6: coproduct of W^0_4

DELTA_W04 = (
    r"1\otimes W^0_4(p,p_1,p_2,p_3)+W^0_4(p,p_1,p_2,p_3)\otimes 1+"
    r"W^0_3(p,p_1,\bar{q})\otimes W^0_3(\bar{q},p_2,p_3)+W^0_3(q,p_1,p_2)\otimes W^0_3(p,q,p_3)"
)


def _norm_tex(s: str) -> str:
    s = s.replace(r"\left", "").replace(r"\right", "").replace(r"\notag", "")
    s = s.replace("&", "").replace("\\\\", "")
    s = re.sub(r"\\bar\{(\w)\}", r"\\bar \1", s)
    return re.sub(r"\s+", "", s)


def coproduct_display(n: int) -> str:
    """``Delta W^0_{n+2}`` in display order: the two primitive terms, right cuts, left cuts."""
    a = corr.corr_coproduct(n)
    whole = CorrRef(0, (P,) + ext_labels(n + 1))
    keys = [(corr.ONE, whole), (whole, corr.ONE)] + [k for k in a if corr.ONE not in k]
    right = [k for k in keys[2:] if k[0].root == P]
    left = [k for k in keys[2:] if k[0].root != P]
    ordered = keys[:2] + right + left
    return "+".join(r"\otimes ".join(x.latex() for x in k) for k in ordered)


def suite_coproduct_w04() -> list[Line]:
    got = coproduct_display(2)
    out = [("Delta W^0_4 matches the four-term display", _norm_tex(got) == _norm_tex(DELTA_W04), got)]
    table = corr.admissible_trees(2)
    terms = [k for k in corr.corr_coproduct(2, reduced=True)]
    third = next(k for k in terms if k[0].root == P)
    fourth = next(k for k in terms if k[0].root != P)
    t21, t12 = _tree("(|,(|,|))"), _tree("((|,|),|)")
    out.append(("only tree(21) admits the third term", table.get(third) == [t21], str(table.get(third))))
    out.append(("only tree(12) admits the fourth term", table.get(fourth) == [t12], str(table.get(fourth))))
    return out


# -- 7: loop graphs

BALANCED = "((|,|),(|,|))"


def suite_loops() -> list[Line]:
    out: list[Line] = []
    g11 = loops.enumerate_loop_graphs(1, 1)
    out.append(("(Y^1)^1 has one graph", len(g11) == 1, ", ".join(map(str, g11))))
    bal = _tree(BALANCED)
    hits = [x for x in loops.enumerate_loop_graphs(3, 2) if x.base == bal]
    out.append(("balanced order-3 tree contributes no graph to (Y^3)^2", not hits,
                "found " + ", ".join(map(str, hits)) if hits else "ok"))
    bridged = LoopGraph(bal, [(1, 2)])
    dead = all(loops.contract(bridged, i) is None for i in range(len(bridged.free_leaves())))
    out.append(("  (info) balanced tree after its root bridge admits no second loop", dead, "ok"))
    bad = [(n, g) for n in range(1, 6) for g in range(3) if n + 2 - 2 * g >= 1
           and set(loops.genus_split(n, g)) != set(loops.enumerate_loop_graphs(n, g))]
    out.append(("genus_split = enumerate_loop_graphs, n <= 5, g <= 2", not bad, _first(bad)))
    bad = [n for n in range(1, 5) if not loops.derivation_overcount_check(n)]
    out.append(("derivation overcount, n <= 4", not bad, _first(bad)))
    target = LoopGraph(bal, [(1, 2)])
    w = loops.weighted(loops.enumerate_loop_graphs(3, 1))
    # 15 graphs, one of them counted twice, times the 2! orderings of p1, p2
    total = corr.expand_wg(1, 3).count()
    out.append(("weight-2 symmetric graph in W^1_3", w.coef(target) == 2 and total == 32,
                f"weight {w.coef(target)}, {total} terms"))
    return out


# -- 8: recursion expansion

TOPREC_W04 = (r"K_p(q,\bar q)\left(W^0_3(q,p_1,p_2)W^0_2(\bar q,p_3)"
              r"+W^0_2(q,p_1)W^0_3(\bar q,p_2,p_3)\right)")
TOPREC_W12 = (r"K_p(q,\bar q)\left(W^0_3(q,\bar q,p_1)+W^1_1(q)W^0_2(\bar q,p_1)"
              r"+W^0_2(q,p_1)W^1_1(\bar q)\right)")


def suite_expansion(max_order: int = 5, expand_upto: int = 5) -> list[Line]:
    out: list[Line] = []
    bad = []
    for n in range(1, max_order + 1):
        s = corr.expand_w0(n)
        want = catalan(n) * factorial(n + 1)
        if s.count() != want or (n <= expand_upto and len(s.expand()) != want):
            bad.append(n)
    out.append((f"expand_w0(n) has Catalan(n)(n+1)! terms, n <= {max_order}", not bad, _first(bad)))
    w04 = corr.toprec_rhs(0, ext_labels(3)).latex()
    out.append(("toprec W^0_4 display", _norm_tex(w04) == _norm_tex(TOPREC_W04), w04))
    w12 = corr.toprec_rhs(1, ext_labels(1)).latex()
    out.append(("toprec W^1_2 display", _norm_tex(w12) == _norm_tex(TOPREC_W12), w12))
    return out


# -- 9: product compatibility

def suite_product(max_total: int = 4) -> list[Line]:
    pairs = [(l, m) for l in range(1, max_total) for m in range(1, max_total) if l + m <= max_total]
    bad = [lm for lm in pairs if not corr.merge_matches_recursion(*lm)]
    out = [(f"merge derivation gives W^0_(l+m+2), l+m <= {max_total}", not bad, _first(bad))]
    p1, p2, p3 = ext_labels(3)
    a = CorrRef(0, (P, p1, p2))
    b = CorrRef(0, (P, p2, p3))
    out.append(("W^0_3(p,p1,p2)*W^0_3(p,p2,p3) = W^0_4(p,p1,p2,p3)",
                corr.corr_product(a, b) == LinComb.basis(CorrRef(0, (P, p1, p2, p3))), "ok"))
    return out


# -- 10: forests

EXP_SERIES = {1: ["•"], 2: ["•[•]", "• •"], 3: ["•[•[•]]", "•[•,•]", "•[•] •", "• •[•]", "• • •"]}


def suite_foissy(max_order: int = 8) -> list[Line]:
    from .serialize import parse_forest
    out = [
        ("phi(•) = (1)", foissy.phi(foissy.DOT) == GEN, "ok"),
        ("phi(ladder 2) = tree(12)", foissy.phi(foissy.ladder(2)) == _tree("((|,|),|)"), "ok"),
        ("phi(• •) = tree(21)", foissy.phi(foissy.forest(foissy.DOT, foissy.DOT)) == _tree("(|,(|,|))"), "ok"),
    ]
    series = foissy.exp_series(3)
    ok = all(series[n] == LinComb((parse_forest(f), 1) for f in fs) for n, fs in EXP_SERIES.items())
    out.append(("exp series orders 1-3 match the forest lists", ok, "ok"))
    rep = foissy.count_report(max_order)
    ok = all(a == b for _, a, b in rep) and all(foissy.surjective(n) for n in range(max_order + 1))
    out.append((f"forest count = Catalan(n), n <= {max_order}", ok, str([a for _, a, _ in rep])))
    return out


# -- 11: quantization

def suite_quantize(max_order: int = 4) -> list[Line]:
    gen = LoopGraph(GEN)
    out = [
        ("Q((1)) = (1)^1", quantize.q_op(gen) == LinComb.basis(LoopGraph(GEN, [(0, 1)])), "ok"),
        ("Q(|) = 0", not quantize.q_op(LoopGraph(LEAF)), "ok"),
        ("Q^2(tree(12)) = 0", not quantize.q_power(LinComb.basis(LoopGraph(_tree("((|,|),|)"))), 2), "ok"),
    ]
    bad = []
    for n in range(max_order + 1):
        for g in range(quantize.genus_bound(n) + 1):
            if n + 2 - 2 * g < 1:
                continue
            for x in loops.enumerate_loop_graphs(n, g):
                l, m, r = quantize.q_parts(x)
                if quantize.q_op(x) != l + m + r or quantize.q_op(x) != LinComb((y, 1) for y in loops.contractions(x)):
                    bad.append(x)
    out.append(("Q = Q_L + Q_M + Q_R on Y^(<=4)", not bad, _first(bad)))

    from .serialize import parse_graph
    one = hopf.tree(GEN)
    want = quantize.HSeries([
        LinComb((parse_graph(s), 1) for s in ("((|,|),|)", "(|,(|,|))")),
        LinComb((parse_graph(s), 1) for s in (
            "((|,|),|);loops=[(0,1)]", "((|,|),|);loops=[(1,2)]",
            "(|,(|,|));loops=[(0,1)]", "(|,(|,|));loops=[(1,2)]")),
    ])
    out.append(("(1) *_h (1) display", quantize.quantum_star(one, one) == want, "ok"))
    want = LinComb((parse_graph(s), 1) for s in ("(|,(|,|));loops=[(1,2)]", "((|,|),|);loops=[(1,2)]"))
    got = quantize.graph_star(gen, LoopGraph(GEN, [(0, 1)]))
    out.append(("(1) *_h (1)^1 display", got == want, "ok"))
    w1, w2 = quantize.build_W(1), quantize.build_W(2)
    out.append(("W^(1) . W^(1) = W^(2)", w1 * w1 == w2, "ok"))
    return out


SUITES: dict[str, Callable[[], list[Line]]] = {
    "1": suite_hopf,
    "2": suite_catalan,
    "3": suite_golden,
    "4": suite_antipode,
    "5": suite_reduced,
    "6": suite_coproduct_w04,
    "7": suite_loops,
    "8": suite_expansion,
    "9": suite_product,
    "10": suite_foissy,
    "11": suite_quantize,
}

NAMES = {
    "1": "hopf", "2": "catalan", "3": "golden", "4": "antipode", "5": "reduced",
    "6": "coproduct-w04", "7": "loops", "8": "expansion", "9": "product",
    "10": "foissy", "11": "quantize",
}


def resolve(name: str) -> str:
    if name in SUITES:
        return name
    for key, alias in NAMES.items():
        if alias == name:
            return key
    raise KeyError(name)


def run(name: str) -> list[Line]:
    return SUITES[resolve(name)]()


def passed(lines: list[Line]) -> bool:
    """Info lines (names starting with two spaces) never fail a suite."""
    return all(ok for name, ok, _ in lines if not name.startswith("  "))


def run_all() -> dict[str, list[Line]]:
    return {key: fn() for key, fn in SUITES.items()}
