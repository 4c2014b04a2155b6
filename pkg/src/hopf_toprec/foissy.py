"""Planar rooted forests and their map into planar binary trees.

``phi`` sends the empty forest to ``|``, a forest ``t1 ... tn`` to
``phi(t1) \\ ... \\ phi(tn)`` and a rooted tree with children forest ``f`` to
``phi(f) / (1)``.  The inverse is read from a table built per order.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache, reduce
from fractions import Fraction

from . import hopf, perms
from .linear import LinComb
from .trees import GEN, LEAF, Tree, catalan, enumerate_trees

VERTEX = "•"


class RootedTree:
    """A root with an ordered tuple of children."""

    __slots__ = ("children", "size", "_hash")

    def __init__(self, children: tuple = ()):
        self.children = tuple(children)
        self.size = 1 + sum(c.size for c in self.children)
        self._hash = hash(("RootedTree", self.children))

    def _key(self) -> tuple:
        return (self.size, tuple(c._key() for c in self.children))

    def sort_key(self) -> tuple:
        return (30,) + self._key()

    def __eq__(self, other) -> bool:
        return isinstance(other, RootedTree) and self.children == other.children

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self.children:
            return VERTEX
        return VERTEX + "[" + ",".join(str(c) for c in self.children) + "]"

    def __repr__(self) -> str:
        return f"RootedTree({self})"


class Forest:
    """An ordered sequence of rooted trees; the order matters."""

    __slots__ = ("trees", "size", "_hash")

    def __init__(self, trees=()):
        self.trees = tuple(trees)
        self.size = sum(t.size for t in self.trees)
        self._hash = hash(("Forest", self.trees))

    def sort_key(self) -> tuple:
        return (31, self.size, len(self.trees), tuple(t._key() for t in self.trees))

    def __eq__(self, other) -> bool:
        return isinstance(other, Forest) and self.trees == other.trees

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.trees)

    def __str__(self) -> str:
        if not self.trees:
            return "1"
        return " ".join(str(t) for t in self.trees)

    def __repr__(self) -> str:
        return f"Forest({self})"


DOT = RootedTree()
EMPTY_FOREST = Forest()


def ladder(n: int) -> RootedTree:
    """The chain of ``n`` vertices."""
    if n < 1:
        raise ValueError("a ladder needs at least one vertex")
    t = DOT
    for _ in range(n - 1):
        t = RootedTree((t,))
    return t


def forest(*trees: RootedTree) -> Forest:
    return Forest(trees)


# -- the graftings \ and /

def under(t1: Tree, t2: Tree) -> Tree:
    """``t1 \\ t2``: put ``t2`` on the rightmost leaf of ``t1``."""
    if t1.is_leaf:
        return t2
    return Tree(t1.left, under(t1.right, t2))


def over(t1: Tree, t2: Tree) -> Tree:
    """``t1 / t2``: put ``t1`` on the leftmost leaf of ``t2``."""
    if t2.is_leaf:
        return t1
    return Tree(over(t1, t2.left), t2.right)


def phi(x) -> Tree:
    if isinstance(x, RootedTree):
        return over(phi(Forest(x.children)), GEN)
    if isinstance(x, Forest):
        return reduce(under, (phi(t) for t in x.trees), LEAF)
    raise TypeError(f"phi expects a rooted tree or a forest, got {type(x).__name__}")


# -- enumeration

@lru_cache(maxsize=None)
def rooted_trees(n: int) -> tuple[RootedTree, ...]:
    """Planar rooted trees with ``n`` vertices."""
    if n < 1:
        return ()
    return tuple(RootedTree(f.trees) for f in forests(n - 1))


@lru_cache(maxsize=None)
def forests(n: int) -> tuple[Forest, ...]:
    """Planar forests with ``n`` vertices (the empty forest for ``n = 0``)."""
    if n < 0:
        raise ValueError("size must be non-negative")
    if n == 0:
        return (EMPTY_FOREST,)
    out = []
    for first in range(1, n + 1):
        for t in rooted_trees(first):
            for rest in forests(n - first):
                out.append(Forest((t,) + rest.trees))
    return tuple(sorted(out, key=lambda f: f.sort_key()))


@lru_cache(maxsize=None)
def phi_table(n: int) -> dict:
    """``phi`` restricted to forests of size ``n``, inverted.

    Raises if two forests share an image.
    """
    table: dict = {}
    for f in forests(n):
        img = phi(f)
        if img in table:
            raise ArithmeticError(f"phi is not injective: {f} and {table[img]}")
        table[img] = f
    return table


def phi_inverse(t: Tree) -> Forest:
    return phi_table(t.order)[t]


def phi_inverse_lin(a: LinComb) -> LinComb:
    return a.map_basis(phi_inverse)


def exp_series(N: int) -> list[LinComb]:
    """Coefficient of ``g^n / n!`` in ``exp(g (1))``, read as forests, ``n = 0..N``.

    Uses ``(1)^{*n}`` in k[Y^oo], where every tree of order ``n`` appears once.
    """
    if N < 0:
        raise ValueError("truncation order must be >= 0")
    return [phi_inverse_lin(hopf.gen_power(n)) for n in range(N + 1)]


def exp_series_via_permutations(N: int) -> list[LinComb]:
    """Same series, computing ``(1)^n`` in k[S^oo] and pushing each permutation
    to its tree; this carries the leveling multiplicities."""
    out = []
    gen = LinComb.basis(perms.Perm((1,)))
    power = LinComb.basis(perms.EMPTY)
    for n in range(N + 1):
        out.append(phi_inverse_lin(hopf.push(power)))
        power = perms.star(power, gen)
    return out


def exp_series_comparison(N: int) -> list[dict]:
    """Per order, the forests whose two coefficients differ."""
    report = []
    for n, (a, b) in enumerate(zip(exp_series(N), exp_series_via_permutations(N))):
        diff = {str(f): (a.coef(f), b.coef(f)) for f in set(a) | set(b) if a.coef(f) != b.coef(f)}
        report.append({"order": n, "differences": diff})
    return report


def count_report(N: int) -> list[tuple[int, int, int]]:
    """``(n, number of forests, Catalan(n))`` for ``n <= N``."""
    return [(n, len(phi_table(n)), catalan(n)) for n in range(N + 1)]


def surjective(n: int) -> bool:
    return set(phi_table(n)) == set(enumerate_trees(n))


def associativity_report(max_order: int) -> dict:
    """Failures of ``(a\\b)\\c = a\\(b\\c)`` and ``(a/b)/c = a/(b/c)`` over trees
    of order ``<= max_order``.  Empty lists mean the identities held."""
    trees = [t for n in range(max_order + 1) for t in enumerate_trees(n)]
    fails: dict = {"under": [], "over": []}
    for a in trees:
        for b in trees:
            for c in trees:
                if under(under(a, b), c) != under(a, under(b, c)):
                    fails["under"].append((a, b, c))
                if over(over(a, b), c) != over(a, over(b, c)):
                    fails["over"].append((a, b, c))
    return fails


def multiplicities(a: LinComb) -> Counter:
    return Counter({str(f): Fraction(c) for f, c in a.items()})
