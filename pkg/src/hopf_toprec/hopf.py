"""The Loday-Ronco Hopf algebra k[Y^oo] of planar binary trees.

A tree ``t`` is identified with the sum of the permutations in its fiber
under :func:`perm_to_tree`; these sums span a sub-Hopf algebra of k[S^oo].
The product is computed directly on trees by the recursion

    t * t' = t1 v (t2 * t') + (t * t1') v t2',     t * | = | * t = t,

and the coproduct is read off the permutation coproduct of the fiber sum.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import perms
from .linear import LinComb, apply_at, bilinear, componentwise, tensor
from .perms import Perm
from .trees import GEN, LEAF, Tree, perm_to_tree, representative, tree_to_perms

_DEBUG = os.environ.get("HOPF_TOPREC_DEBUG", "") not in ("", "0")


def tree(t: Tree, coef=1) -> LinComb:
    return LinComb.basis(t, coef)


ONE = tree(LEAF)


@lru_cache(maxsize=None)
def _star_basis(t: Tree, u: Tree) -> LinComb:
    if u.is_leaf:
        return tree(t)
    if t.is_leaf:
        return tree(u)
    left = _star_basis(t.right, u).map_basis(lambda s: Tree(t.left, s))
    right = _star_basis(t, u.left).map_basis(lambda s: Tree(s, u.right))
    return left + right


def star(a: LinComb, b: LinComb) -> LinComb:
    return bilinear(_star_basis, a, b)


def star_basis(t: Tree, u: Tree) -> LinComb:
    return _star_basis(t, u)


def power(a: LinComb, n: int) -> LinComb:
    out = ONE
    for _ in range(n):
        out = star(out, a)
    return out


def gen_power(n: int) -> LinComb:
    """``(1)^{*n}``."""
    return power(tree(GEN), n)


# -- transport between trees and permutations

def embed(a: LinComb) -> LinComb:
    """Tree -> sum of its fiber in k[S^oo]."""
    return a.map_basis(lambda t: LinComb((s, 1) for s in tree_to_perms(t)))


def push(a: LinComb) -> LinComb:
    """k[S^oo] -> k[Y^oo], ``sigma -> perm_to_tree(sigma)`` (not multiplicative)."""
    return a.map_basis(perm_to_tree)


def restrict(a: LinComb) -> LinComb:
    """Inverse of :func:`embed` on its image (reads canonical representatives).

    Raises ``ValueError`` if ``a`` is not a combination of fiber sums.
    """
    out = LinComb((perm_to_tree(s), c) for s, c in a.items() if s == representative(perm_to_tree(s)))
    if embed(out) != a:
        raise ValueError("not in the span of fiber sums")
    return out


def _restrict_tensor(a: LinComb) -> LinComb:
    terms = []
    for key, c in a.items():
        if all(s == representative(perm_to_tree(s)) for s in key):
            terms.append((tuple(perm_to_tree(s) for s in key), c))
    return LinComb(terms)


# -- coproduct

@lru_cache(maxsize=None)
def _coproduct_basis(t: Tree) -> LinComb:
    full = perms.coproduct(embed(tree(t)))
    out = _restrict_tensor(full)
    if _DEBUG:
        check_coproduct_representation(t, full, out)
    return out


def check_coproduct_representation(t: Tree, full: LinComb | None = None, out: LinComb | None = None) -> bool:
    """Cross-check that the fiber coproduct is a combination of fiber-sum tensors."""
    if full is None:
        full = perms.coproduct(embed(tree(t)))
    if out is None:
        out = _restrict_tensor(full)
    rebuilt = LinComb()
    for (t1, t2), c in out.items():
        rebuilt = rebuilt + tensor(embed(tree(t1)), embed(tree(t2))).scale(c)
    if rebuilt != full:
        raise AssertionError(f"coproduct of {t} leaves the tree subalgebra")
    return True


def coproduct_basis(t: Tree) -> LinComb:
    return _coproduct_basis(t)


def coproduct(a: LinComb) -> LinComb:
    return a.map_basis(_coproduct_basis)


def coproduct_via_representative(sigma: Perm) -> LinComb:
    """Push the coproduct of a single permutation through ``perm_to_tree``.

    Only kept for comparison: the result depends on the chosen representative.
    """
    return perms.coproduct_perm(sigma).map_basis(lambda k: (perm_to_tree(k[0]), perm_to_tree(k[1])))


def _reduced_basis(t: Tree) -> LinComb:
    if t.is_leaf:
        return LinComb()
    return _coproduct_basis(t) - LinComb([((LEAF, t), 1), ((t, LEAF), 1)])


def reduced_coproduct(a: LinComb) -> LinComb:
    return a.map_basis(_reduced_basis)


def iterated_reduced(a: LinComb, k: int) -> LinComb:
    """``D'^(k) = (D' (x) Id) D'^(k-1)``, landing in the (k+1)-th tensor power."""
    if k < 1:
        raise ValueError("iteration count must be >= 1")
    out = reduced_coproduct(a)
    for _ in range(k - 1):
        out = apply_at(out, 0, _reduced_basis)
    return out


def iterated_reduced_normalized(n: int) -> LinComb:
    """``D'^(n-1)`` of ``(1)^n / n!``: the normalized view of the iteration."""
    return iterated_reduced(gen_power(n), n - 1).scale(Fraction(1, factorial(n)))


def is_primitive(a: LinComb) -> bool:
    return not reduced_coproduct(a)


def counit(a: LinComb):
    return a.coef(LEAF)


# -- antipode

@lru_cache(maxsize=None)
def _antipode_basis(t: Tree) -> LinComb:
    if t.is_leaf:
        return ONE
    out = -tree(t)
    for (t1, t2), c in _reduced_basis(t).items():
        out = out - star(_antipode_basis(t1), tree(t2)).scale(c)
    return out


def antipode(a: LinComb) -> LinComb:
    return a.map_basis(_antipode_basis)


def convolution_identity(a: LinComb, side: str = "left") -> LinComb:
    """``m (S (x) Id) D`` (side="left") or ``m (Id (x) S) D`` applied to ``a``."""
    out = LinComb()
    for (t1, t2), c in coproduct(a).items():
        if side == "left":
            out = out + star(antipode(tree(t1)), tree(t2)).scale(c)
        else:
            out = out + star(tree(t1), antipode(tree(t2))).scale(c)
    return out


def tensor_star(a: LinComb, b: LinComb) -> LinComb:
    """Componentwise product on tensor powers of k[Y^oo]."""
    return componentwise(_star_basis, a, b)
