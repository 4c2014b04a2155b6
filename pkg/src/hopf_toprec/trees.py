"""Planar binary trees and their correspondence with permutations."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .perms import Perm, std


class Tree:
    """Planar binary tree: the leaf ``|`` or a grafting ``left v right``.

    Instances are interned, so structurally equal trees are the same object.
    Leaves are numbered ``0..order`` from left to right.
    """

    __slots__ = ("left", "right", "order", "_key", "_hash", "__weakref__")
    _table: dict = {}

    def __new__(cls, left: "Tree | None" = None, right: "Tree | None" = None):
        if (left is None) != (right is None):
            raise ValueError("a node needs two subtrees")
        ident = None if left is None else (id(left), id(right))
        hit = cls._table.get(ident)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.left = left
        self.right = right
        if left is None:
            self.order = 0
            self._key = (0,)
        else:
            self.order = left.order + right.order + 1
            self._key = (self.order, left._key, right._key)
        self._hash = hash(self._key)
        cls._table[ident] = self
        return self

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def leaves(self) -> int:
        return self.order + 1

    def sort_key(self) -> tuple:
        return (1,) + self._key

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Tree) and self._key == other._key)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Tree") -> bool:
        return self._key < other._key

    def __reduce__(self):
        return (Tree, (self.left, self.right))

    def __str__(self) -> str:
        if self.left is None:
            return "|"
        return f"({self.left},{self.right})"

    def __repr__(self) -> str:
        return f"Tree({self})"


LEAF = Tree()
GEN = Tree(LEAF, LEAF)


def graft(t1: Tree, t2: Tree) -> Tree:
    return Tree(t1, t2)


def ungraft(t: Tree) -> tuple[Tree, Tree]:
    if t.is_leaf:
        raise ValueError("cannot ungraft identity")
    return t.left, t.right


def mirror(t: Tree) -> Tree:
    if t.is_leaf:
        return t
    return Tree(mirror(t.right), mirror(t.left))


def perm_to_tree(sigma: Perm) -> Tree:
    """Split at the position of the maximum and recurse on the standardized halves."""
    images = sigma.images
    if not images:
        return LEAF
    i = images.index(len(images))
    return Tree(perm_to_tree(std(images[:i])), perm_to_tree(std(images[i + 1:])))


@lru_cache(maxsize=None)
def tree_to_perms(t: Tree) -> frozenset[Perm]:
    """The fiber of ``perm_to_tree`` over ``t``."""
    if t.is_leaf:
        return frozenset([Perm()])
    n, p = t.order, t.left.order
    out = set()
    lefts, rights = tree_to_perms(t.left), tree_to_perms(t.right)
    for low in combinations(range(1, n), p):
        high = [v for v in range(1, n) if v not in low]
        for a in lefts:
            wa = tuple(low[x - 1] for x in a.images)
            for b in rights:
                wb = tuple(high[x - 1] for x in b.images)
                out.add(Perm(wa + (n,) + wb))
    return frozenset(out)


def fiber_size(t: Tree) -> int:
    if t.is_leaf:
        return 1
    return comb(t.order - 1, t.left.order) * fiber_size(t.left) * fiber_size(t.right)


@lru_cache(maxsize=None)
def representative(t: Tree) -> Perm:
    """Canonical element of the fiber: left subtree gets the smallest values."""
    if t.is_leaf:
        return Perm()
    a = representative(t.left).images
    b = representative(t.right).images
    k = len(a)
    return Perm(a + (t.order,) + tuple(x + k for x in b))


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[Tree, ...]:
    """All of ``Y^n`` in canonical order."""
    if n < 0:
        raise ValueError("order must be non-negative")
    if n == 0:
        return (LEAF,)
    out = [Tree(a, b) for p in range(n) for a in enumerate_trees(p) for b in enumerate_trees(n - 1 - p)]
    return tuple(sorted(out))


def catalan(n: int) -> int:
    return factorial(2 * n) // (factorial(n) * factorial(n + 1))


def from_perm_string(s: str) -> Tree:
    """Convenience: ``"132"`` -> tree of the permutation (132)."""
    if s in ("", "e"):
        return LEAF
    return perm_to_tree(Perm(int(c) for c in s))

