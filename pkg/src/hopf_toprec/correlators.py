"""Symbolic correlation functions built from kernels and cylinders.

Expressions are immutable trees:

* ``Cylinder(x, y)``: the two-point function ``W^0_2(x, y)``;
* ``CorrRef(g, labels)``: an unexpanded ``W^g_k(labels)`` factor;
* ``Kernel(base, pair, factors)``: ``K_base(q_pair, qb_pair)`` times the
  product of ``factors``.

Internal pair indices are assigned in depth-first (preorder) order of the
kernels, starting at 1 from the root, so equal expressions compare equal.
Sums of expressions are :class:`~hopf_toprec.linear.LinComb` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterator, Sequence

from . import hopf, loops
from .linear import LinComb
from .loops import LoopGraph, graph_weight, root_bridged, split, ungraft_graph
from .trees import LEAF, Tree, enumerate_trees

_KIND_RANK = {"root": 0, "ext": 1, "q": 2, "qbar": 3}


@dataclass(frozen=True, order=False)
class Label:
    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown label kind {self.kind!r}")

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.index)

    @property
    def internal(self) -> bool:
        return self.kind in ("q", "qbar")

    def conjugate(self) -> "Label":
        if not self.internal:
            raise ValueError("only internal labels have a conjugate")
        return Label("qbar" if self.kind == "q" else "q", self.index)

    def text(self) -> str:
        suffix = str(self.index) if self.index else ""
        return {"root": "p" + ("'" * self.index), "ext": f"p{self.index}",
                "q": "q" + suffix, "qbar": "qb" + suffix}[self.kind]

    def latex(self) -> str:
        suffix = f"_{self.index}" if self.index else ""
        return {"root": "p" + ("'" * self.index), "ext": f"p_{self.index}",
                "q": "q" + suffix, "qbar": r"\bar q" + suffix}[self.kind]

    def __str__(self) -> str:
        return self.text()


P = Label("root")
Q = Label("q")
QB = Label("qbar")


def ext(i: int) -> Label:
    return Label("ext", i)


def q(i: int) -> Label:
    return Label("q", i)


def qb(i: int) -> Label:
    return Label("qbar", i)


def ext_labels(k: int, start: int = 1) -> tuple[Label, ...]:
    return tuple(ext(i) for i in range(start, start + k))


# -- expression nodes

@dataclass(frozen=True)
class Cylinder:
    x: Label
    y: Label

    def sort_key(self) -> tuple:
        return (10, self.x.sort_key(), self.y.sort_key())

    def __str__(self) -> str:
        return f"W2({self.x},{self.y})"


@dataclass(frozen=True)
class CorrRef:
    genus: int
    labels: tuple[Label, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.genus < 0 or not self.labels:
            raise ValueError("a correlation function needs a genus >= 0 and a root label")

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.k

    @property
    def order(self) -> int:
        return -self.euler

    @property
    def root(self) -> Label:
        return self.labels[0]

    def sort_key(self) -> tuple:
        return (11, self.genus, self.k, tuple(x.sort_key() for x in self.labels))

    def text(self) -> str:
        inner = ",".join(x.text() for x in self.labels)
        return f"W[g={self.genus},k={self.k}]({inner})"

    def latex(self) -> str:
        inner = ",".join(x.latex() for x in self.labels)
        return f"W^{self.genus}_{self.k}({inner})"

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class Kernel:
    base: Label
    pair: int
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def sort_key(self) -> tuple:
        return (12, self.base.sort_key(), self.pair, tuple(f.sort_key() for f in self.factors))

    def __str__(self) -> str:
        inner = ", ".join(str(f) for f in self.factors)
        return f"K[{self.base};{q(self.pair)},{qb(self.pair)}]({inner})"


@dataclass(frozen=True)
class Unit:
    """The unit ``1`` of a tensor factor."""

    def sort_key(self) -> tuple:
        return (9,)

    def text(self) -> str:
        return "1"

    latex = text

    def __str__(self) -> str:
        return "1"


ONE = Unit()
Expr = Cylinder | CorrRef | Kernel


def walk(expr) -> Iterator:
    yield expr
    if isinstance(expr, Kernel):
        for f in expr.factors:
            yield from walk(f)


def labels_of(expr) -> list[Label]:
    """Every label occurrence, kernels contributing ``base, q_i, qb_i``."""
    out: list[Label] = []
    for node in walk(expr):
        if isinstance(node, Cylinder):
            out += [node.x, node.y]
        elif isinstance(node, CorrRef):
            out += list(node.labels)
        elif isinstance(node, Kernel):
            out += [node.base, q(node.pair), qb(node.pair)]
    return out


def kernel_count(expr) -> int:
    return sum(1 for node in walk(expr) if isinstance(node, Kernel))


def cylinder_count(expr) -> int:
    return sum(1 for node in walk(expr) if isinstance(node, Cylinder))


def relabel(expr, mapping: dict):
    """Rename labels (kernel bases and factor labels); pair indices untouched."""
    m = lambda x: mapping.get(x, x)
    if isinstance(expr, Cylinder):
        return Cylinder(m(expr.x), m(expr.y))
    if isinstance(expr, CorrRef):
        return CorrRef(expr.genus, tuple(m(x) for x in expr.labels))
    if isinstance(expr, Kernel):
        return Kernel(m(expr.base), expr.pair, tuple(relabel(f, mapping) for f in expr.factors))
    return expr


def renumber(expr, start: int = 1):
    """Reassign kernel pair indices in preorder, renaming q_i and qb_i to match."""
    order: list[int] = [n.pair for n in walk(expr) if isinstance(n, Kernel)]
    new = {old: start + i for i, old in enumerate(order)}
    mapping = {}
    for old, fresh in new.items():
        mapping[q(old)] = q(fresh)
        mapping[qb(old)] = qb(fresh)

    def go(e):
        if isinstance(e, Kernel):
            return Kernel(mapping.get(e.base, e.base), new[e.pair], tuple(go(f) for f in e.factors))
        return relabel(e, mapping)

    return go(expr)


# -- the psi representation

def psi_tree(t: Tree, labels: Sequence[Label], start: int = 1):
    """Kernel/cylinder expression of a tree with ``labels = [root, leaf_0, ...]``."""
    labels = tuple(labels)
    if len(labels) != t.leaves + 1:
        raise ValueError(f"tree with {t.leaves} leaves needs {t.leaves + 1} labels, got {len(labels)}")
    expr, _ = _psi_tree(t, labels[0], labels[1:], start)
    return expr


def _psi_tree(t: Tree, root: Label, leaves: tuple, nxt: int):
    if t.is_leaf:
        return Cylinder(root, leaves[0]), nxt
    i = nxt
    cut = t.left.leaves
    left, nxt = _psi_tree(t.left, q(i), leaves[:cut], nxt + 1)
    right, nxt = _psi_tree(t.right, qb(i), leaves[cut:], nxt)
    return Kernel(root, i, (left, right)), nxt


def psi_graph(gph: LoopGraph, labels: Sequence[Label], start: int = 1):
    """Expression of a loop graph; ``labels = [root] + labels of the free leaves``.

    A graph bridged at its root is expanded through ungrafting: the kernel at
    the root carries one factor, the genus ``g-1`` graph rooted at ``q`` whose
    last leaf is ``qb``.  Other graphs split at the root as trees do.
    """
    labels = tuple(labels)
    if len(labels) != gph.labels:
        raise ValueError(f"graph needs {gph.labels} labels, got {len(labels)}")
    expr, _ = _psi_graph(gph, labels, start)
    return expr


def _psi_graph(gph: LoopGraph, labels: tuple, nxt: int):
    if gph.base.is_leaf:
        return Cylinder(labels[0], labels[1]), nxt
    i = nxt
    if root_bridged(gph):
        inner = ungraft_graph(gph)
        body, nxt = _psi_graph(inner, (q(i),) + labels[1:] + (qb(i),), nxt + 1)
        return Kernel(labels[0], i, (body,)), nxt
    g1, g2, _ = split(gph)
    cut = g1.labels - 1
    left, nxt = _psi_graph(g1, (q(i),) + labels[1:1 + cut], nxt + 1)
    right, nxt = _psi_graph(g2, (qb(i),) + labels[1 + cut:], nxt)
    return Kernel(labels[0], i, (left, right)), nxt


# -- symmetrized sums

class Symmetrized:
    """A sum over all orderings of the external labels, kept lazily.

    ``base`` holds the terms for the identity ordering of ``externals``.
    """

    def __init__(self, base: LinComb, externals: Sequence[Label]):
        self.base = base
        self.externals = tuple(externals)

    def count(self) -> int:
        """Number of (tree or graph, ordering) terms, with weights as multiplicity."""
        total = sum(self.base.coef(b) for b in self.base)
        return int(total) * factorial(len(self.externals))

    def orderings(self) -> Iterator[dict]:
        for perm in permutations(self.externals):
            yield dict(zip(self.externals, perm))

    def expand(self) -> LinComb:
        terms: dict = {}
        for mapping in self.orderings():
            for expr, c in self.base.items():
                e = relabel(expr, mapping)
                terms[e] = terms.get(e, 0) + c
        return LinComb(terms)

    def __len__(self) -> int:
        return self.count()


def expand_w0(n: int) -> Symmetrized:
    """``W^0_{n+2}(p, p1..p_{n+1})`` as the sum over ``Y^n`` and all leaf orderings."""
    if n < 1:
        raise ValueError("order must be >= 1")
    labels = (P,) + ext_labels(n + 1)
    base = LinComb((psi_tree(t, labels), 1) for t in enumerate_trees(n))
    return Symmetrized(base, labels[1:])


def expand_wg(g: int, n: int) -> Symmetrized:
    """``W^g_k`` with ``k = n + 2 - 2g``: weighted loop graphs and all orderings."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    k = n + 2 - 2 * g
    if k < 1 or n < 1:
        raise ValueError("inconsistent Euler characteristic")
    labels = (P,) + ext_labels(k - 1)
    base = LinComb((psi_graph(x, labels), graph_weight(x)) for x in loops.enumerate_loop_graphs(n, g))
    return Symmetrized(base, labels[1:])


def planar_expansion(ref: CorrRef, start: int = 1) -> LinComb:
    """All trees (or weighted graphs) of ``ref`` with its labels in the given order."""
    if ref.genus == 0 and ref.k == 2:
        return LinComb.basis(Cylinder(*ref.labels))
    n = ref.order
    if n < 1:
        raise ValueError(f"{ref} has no tree expansion")
    if ref.genus == 0:
        return LinComb((psi_tree(t, ref.labels, start), 1) for t in enumerate_trees(n))
    return LinComb(
        (psi_graph(x, ref.labels, start), graph_weight(x))
        for x in loops.enumerate_loop_graphs(n, ref.genus)
    )


# -- one step of the recursion

@dataclass(frozen=True)
class RecursionStep:
    """``K_base(q, qb)`` times an ordered sum of products of ``CorrRef`` factors."""

    base: Label
    terms: tuple[tuple[CorrRef, ...], ...]

    def as_sum(self, pair: int = 1) -> LinComb:
        m = {Q: q(pair), QB: qb(pair)}
        return LinComb((Kernel(self.base, pair, tuple(relabel(f, m) for f in t)), 1) for t in self.terms)

    def latex(self) -> str:
        body = "+".join("".join(f.latex() for f in t) for t in self.terms)
        return f"K_{self.base.latex()}(q,\\bar q)({body})"

    def text(self) -> str:
        body = " + ".join("*".join(f.text() for f in t) for t in self.terms)
        return f"K[{self.base};q,qb]({body})"

    def expanded(self) -> LinComb:
        """Replace each factor by its planar expansion and renumber the pairs."""
        out: dict = {}
        for factors in self.terms:
            partial = [((), Fraction(1), 1)]
            for f in factors:
                exp = planar_expansion(f)
                # shift pair indices so that factors never share one
                partial = [
                    (acc + (renumber(e, nxt),), c * ce, nxt + kernel_count(e))
                    for acc, c, nxt in partial
                    for e, ce in exp.items()
                ]
            for acc, c, _ in partial:
                m = {Q: q(0), QB: qb(0)}
                expr = renumber(Kernel(self.base, 0, tuple(relabel(e, m) for e in acc)))
                out[expr] = out.get(expr, 0) + c
        return LinComb(out)


def toprec_rhs(g: int, externals: Sequence[Label], root: Label = P) -> RecursionStep:
    """Right-hand side of the recursion for ``W^g_{k+1}(root, K)``.

    The loop term ``W^{g-1}_{k+2}(q, qb, K)`` comes first, then the products
    ``W^h(q, L) W^{g-h}(qb, M)`` over consecutive splits ``K = L M``, the
    left factor of highest order first (ties: higher ``h`` first).  Terms
    with nonnegative Euler characteristic are dropped, so ``h = 0`` forces
    ``|L| >= 1``.
    """
    K = tuple(externals)
    if 2 - 2 * g - (len(K) + 1) > -1:
        raise ValueError("inconsistent Euler characteristic")
    terms: list[tuple[CorrRef, ...]] = []
    if g >= 1:
        terms.append((CorrRef(g - 1, (Q, QB) + K),))
    products = []
    for j in range(len(K) + 1):
        L, M = K[:j], K[j:]
        for h in range(g + 1):
            left = CorrRef(h, (Q,) + L)
            right = CorrRef(g - h, (QB,) + M)
            if left.euler <= 0 and right.euler <= 0:
                products.append((left, right))
    products.sort(key=lambda t: (-t[0].order, -t[0].genus))
    return RecursionStep(root, tuple(terms + products))


# -- coproduct on genus 0 correlation functions

def corr_coproduct(n: int, reduced: bool = False) -> LinComb:
    """``Delta W^0_{n+2}(p, p1..p_{n+1})`` with the ``n!`` normalization implicit.

    Besides ``1 (x) W`` and ``W (x) 1``, a right cut gives
    ``W^0_{k+2}(p, p1..pk, qb) (x) W^0_{n-k+2}(qb, p_{k+1}..)`` and a left cut
    ``W^0_{k+2}(q, p1..p_{k+1}) (x) W^0_{n-k+2}(p, q, p_{k+2}..)``.  Each sum
    runs over ``k = 1..n-1``; its ``k = 0`` and ``k = n`` ends only restate the
    two primitive terms with a cylinder factor, so they are not repeated.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    K = ext_labels(n + 1)
    whole = CorrRef(0, (P,) + K)
    terms = [] if reduced else [((ONE, whole), 1), ((whole, ONE), 1)]
    for k in range(1, n):
        terms.append(((CorrRef(0, (P,) + K[:k] + (QB,)), CorrRef(0, (QB,) + K[k:])), 1))
    for k in range(1, n):
        terms.append(((CorrRef(0, (Q,) + K[:k + 1]), CorrRef(0, (P, Q) + K[k + 1:])), 1))
    return LinComb(terms)


def power_coproduct(n: int, normalized: bool = False) -> LinComb:
    """``Delta((1)^n)`` as a combination of ``(1)^k (x) (1)^(n-k)`` tensors.

    Tensor factors are represented by their orders ``(k, n-k)`` through
    :class:`PowerIndex`; ``normalized`` divides by ``n!`` and multiplies each
    factor back by ``k!`` and ``(n-k)!``, giving unit coefficients.
    """
    out = []
    for k in range(n + 1):
        c = Fraction(factorial(n), factorial(k) * factorial(n - k))
        if normalized:
            c = Fraction(1)
        out.append(((PowerIndex(k), PowerIndex(n - k)), c))
    return LinComb(out)


@dataclass(frozen=True)
class PowerIndex:
    """Stands for ``(1)^{*k}``, or ``(1)^{*k}/k!`` in the normalized view."""

    k: int

    def sort_key(self) -> tuple:
        return (20, self.k)

    def __str__(self) -> str:
        return f"(1)^{self.k}"


def realize_powers(a: LinComb, normalized: bool = False) -> LinComb:
    """Turn ``PowerIndex`` tensors into tree tensors for comparison with ``hopf``."""
    out = LinComb()
    for key, c in a.items():
        acc = LinComb({(): c})
        for idx in key:
            fac = hopf.gen_power(idx.k)
            if normalized:
                fac = fac.scale(Fraction(1, factorial(idx.k)))
            acc = LinComb(
                {x + (y,): cx * cy for x, cx in acc.items() for y, cy in fac.items()}
            )
        out = out + acc
    return out


@dataclass(frozen=True)
class Cut:
    """A cut of a tree along an internal edge on its right or left spine."""

    side: str  # "right": the new leaf is qb, rightmost; "left": q, leftmost
    lower: Tree
    upper: Tree

    def term(self, n: int) -> tuple[CorrRef, CorrRef]:
        """The tensor term of :func:`corr_coproduct` this cut realizes."""
        K = ext_labels(n + 1)
        k = self.lower.order if self.side == "right" else self.upper.order
        if self.side == "right":
            return CorrRef(0, (P,) + K[:k] + (QB,)), CorrRef(0, (QB,) + K[k:])
        return CorrRef(0, (Q,) + K[:k + 1]), CorrRef(0, (P, Q) + K[k + 1:])


def cut_decompositions(t: Tree) -> list[Cut]:
    """Cuts of ``t`` whose new leaf is the right-most or left-most leaf of the
    root part; both parts keep at least one vertex."""
    out: list[Cut] = []

    def right_spine(node: Tree, rebuild):
        if node.is_leaf:
            return
        if node is not t:
            out.append(Cut("right", rebuild(LEAF), node))
        right_spine(node.right, lambda s: rebuild(Tree(node.left, s)))

    def left_spine(node: Tree, rebuild):
        if node.is_leaf:
            return
        if node is not t:
            out.append(Cut("left", rebuild(LEAF), node))
        left_spine(node.left, lambda s: rebuild(Tree(s, node.right)))

    if not t.is_leaf:
        right_spine(t, lambda s: s)
        left_spine(t, lambda s: s)
    return out


def admissible_trees(n: int) -> dict:
    """Map each non-primitive term of :func:`corr_coproduct` to the trees of
    ``Y^n`` having a cut that realizes it."""
    table: dict = {}
    for t in enumerate_trees(n):
        for cut in cut_decompositions(t):
            table.setdefault(cut.term(n), []).append(t)
    return table


# -- product on genus 0 correlation functions

def is_cylinder(ref: CorrRef) -> bool:
    return ref.genus == 0 and ref.k == 2


def corr_product(a: CorrRef, b: CorrRef) -> LinComb:
    """Chain product: zero unless the roots agree and a's last label is b's first leaf.

    A cylinder acts as the unit and only passes its root label on.
    """
    if a.genus or b.genus:
        raise ValueError("the chain product is defined in genus 0 only")
    if is_cylinder(a):
        return LinComb.basis(CorrRef(0, (a.root,) + b.labels[1:]))
    if is_cylinder(b):
        return LinComb.basis(CorrRef(0, (b.root,) + a.labels[1:]))
    if a.root != b.root or a.labels[-1] != b.labels[1]:
        return LinComb()
    return LinComb.basis(CorrRef(0, a.labels + b.labels[2:]))


def _chain(a: CorrRef, b: CorrRef, root: Label) -> CorrRef:
    if is_cylinder(a):
        return CorrRef(0, (root,) + b.labels[1:])
    if is_cylinder(b):
        return CorrRef(0, (root,) + a.labels[1:])
    if a.labels[-1] != b.labels[1]:
        raise ValueError(f"{a} and {b} do not chain")
    return CorrRef(0, (root,) + a.labels[1:] + b.labels[2:])


def merge_derivation(l: int, m: int) -> RecursionStep:
    """Product of ``W^0_{l+2}(p, p1..p_{l+1})`` and ``W^0_{m+2}(p, p_{l+1}..p_{l+m+1})``
    through one recursion step on each factor and the grafting identity.

    Each inner product is merged along its chain label, keeping the root of
    the factor that sits under the kernel.  The result lists the terms in
    the order they arise: first the ``k = 0..l-1`` terms, then ``n = 0..m-1``.
    """
    if l < 1 or m < 1:
        raise ValueError("both factors need order >= 1")
    K = ext_labels(l + m + 1)
    A = CorrRef(0, (P,) + K[:l + 1])
    B = CorrRef(0, (P,) + K[l:])
    terms = []
    for k in range(l):
        left = CorrRef(0, (Q,) + K[:k + 1])
        right = CorrRef(0, (QB,) + K[k + 1:l + 1])
        terms.append((left, _chain(right, B, QB)))
    for n in range(m):
        left = CorrRef(0, (Q,) + K[l:l + n + 1])
        right = CorrRef(0, (QB,) + K[l + n + 1:])
        terms.append((_chain(A, left, Q), right))
    return RecursionStep(P, tuple(terms))


def merge_matches_recursion(l: int, m: int) -> bool:
    """The merged terms are exactly the one-step recursion of ``W^0_{l+m+2}``,
    each appearing once (the two orders of listing differ)."""
    merged = merge_derivation(l, m).terms
    target = toprec_rhs(0, ext_labels(l + m + 1)).terms
    return len(merged) == len(set(merged)) and set(merged) == set(target)


# -- antipode transported to correlation functions

def transported_antipode(ref: CorrRef) -> LinComb:
    """``(psi^* S)(W^0_{n+2})``: the antipode of ``(1)^{*n}``, read back as a multiple."""
    if ref.genus != 0:
        raise ValueError("defined in genus 0 only")
    n = ref.order
    source = hopf.gen_power(n)
    image = hopf.antipode(source)
    ratio = image.coef(next(iter(source)))
    if image != source.scale(ratio):
        raise ArithmeticError("antipode image is not proportional to the source")
    return LinComb.basis(ref, ratio)


def euler_of_product(a: CorrRef, b: CorrRef) -> int:
    prod = corr_product(a, b)
    if not prod:
        raise ValueError("product vanishes")
    (res,) = list(prod)
    return res.euler


__all__ = [
    "CorrRef", "Cut", "Cylinder", "Kernel", "Label", "ONE", "P", "Q", "QB",
    "RecursionStep", "Symmetrized", "Unit", "admissible_trees", "corr_coproduct",
    "corr_product", "cut_decompositions", "expand_w0", "expand_wg", "ext",
    "ext_labels", "merge_derivation", "merge_matches_recursion", "planar_expansion",
    "power_coproduct", "psi_graph", "psi_tree", "q", "qb", "realize_powers",
    "relabel", "renumber", "toprec_rhs", "transported_antipode",
]
