"""Graphs with loops: planar binary trees with identified leaf pairs.

A :class:`LoopGraph` keeps its loops on the *original* leaf indices of the
base tree.  The leaf-identification move ``i <-> i+1`` acts on the free
leaves (renumbered ``0..``) and pairs free leaf ``i`` with the next free leaf.
Whether a move is admissible is decided by a :class:`ContractionRule`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .linear import LinComb
from .trees import LEAF, Tree, enumerate_trees, mirror


class LoopGraph:
    __slots__ = ("base", "loops", "_hash")

    def __init__(self, base: Tree, loops: Iterable[tuple[int, int]] = ()):
        pairs = tuple(sorted((int(a), int(b)) for a, b in loops))
        _validate(base, pairs)
        self.base = base
        self.loops = pairs
        self._hash = hash((base, pairs))

    @property
    def genus(self) -> int:
        return len(self.loops)

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def labels(self) -> int:
        """Number of labels including the root: ``n + 2 - 2g``."""
        return self.base.order + 2 - 2 * self.genus

    def free_leaves(self) -> list[int]:
        used = {x for pair in self.loops for x in pair}
        return [i for i in range(self.base.leaves) if i not in used]

    def is_free(self, leaf: int) -> bool:
        return all(leaf not in pair for pair in self.loops)

    def sort_key(self) -> tuple:
        return (2,) + self.base.sort_key()[1:] + (len(self.loops), self.loops)

    def __eq__(self, other) -> bool:
        return isinstance(other, LoopGraph) and self.base == other.base and self.loops == other.loops

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "LoopGraph") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        inner = ",".join(f"({a},{b})" for a, b in self.loops)
        return f"{self.base};loops=[{inner}]"

    def __repr__(self) -> str:
        return f"LoopGraph({self})"


def _validate(base: Tree, pairs: tuple[tuple[int, int], ...]) -> None:
    n_leaves = base.leaves
    seen: set[int] = set()
    for a, b in pairs:
        if not 0 <= a < b < n_leaves:
            raise ValueError(f"loop ({a},{b}) outside leaves 0..{n_leaves - 1}")
        if a in seen or b in seen:
            raise ValueError("loops must be pairwise disjoint")
        seen.update((a, b))
    for a, b in pairs:
        for c, d in pairs:
            if a < c < b < d:
                raise ValueError("loops must not cross")
        # every leaf strictly inside a loop is matched by a nested loop
        for c in range(a + 1, b):
            if c not in seen:
                raise ValueError(f"free leaf {c} trapped inside loop ({a},{b})")


def as_graph(t: Tree) -> LoopGraph:
    return LoopGraph(t)


# -- admissibility of the leaf-identification move

@dataclass(frozen=True)
class ContractionRule:
    """Decides whether two consecutive free leaves may be identified.

    ``adjacent`` (default): only leaves that are neighbours in the base tree,
    so a move never jumps over an existing loop.  This reproduces the W^1_3
    and W^2_1 graph lists drawn for order 3.
    ``nested``: also allow jumping over a loop system when at least two free
    leaves sit on each side of it (counting the pair itself).  Bridges made
    this way are not at the branch boundary, so :func:`split` rejects them.
    """

    name: str = "adjacent"

    def allows(self, gph: LoopGraph, a: int, b: int) -> bool:
        if self.name == "adjacent":
            return b == a + 1
        if self.name == "nested":
            if b == a + 1:
                return True
            free = gph.free_leaves()
            before = sum(1 for x in free if x < a)
            after = sum(1 for x in free if x > b)
            return before >= 1 and after >= 1
        raise ValueError(f"unknown contraction rule {self.name!r}")


ADJACENT = ContractionRule("adjacent")
NESTED = ContractionRule("nested")
_rule = ADJACENT


def default_rule() -> ContractionRule:
    return _rule


def set_default_rule(rule: ContractionRule) -> None:
    global _rule
    _rule = rule
    _closure.cache_clear()


def contract(gph: LoopGraph, i: int, rule: ContractionRule | None = None) -> LoopGraph | None:
    """The move ``i <-> i+1`` on free leaves; ``None`` stands for the zero graph."""
    rule = rule or _rule
    if gph.base.is_leaf:
        raise ValueError("cannot contract: the identity tree has no leaf pair")
    free = gph.free_leaves()
    if not 0 <= i < len(free):
        raise IndexError(f"free leaf index {i} out of range 0..{len(free) - 1}")
    if i + 1 >= len(free):
        return None
    a, b = free[i], free[i + 1]
    if not rule.allows(gph, a, b):
        return None
    return LoopGraph(gph.base, gph.loops + ((a, b),))


def contractions(gph: LoopGraph, rule: ContractionRule | None = None) -> list[LoopGraph]:
    """All nonzero results of one move, with repetition by index."""
    if gph.base.is_leaf:
        return []
    out = []
    for i in range(len(gph.free_leaves())):
        res = contract(gph, i, rule)
        if res is not None:
            out.append(res)
    return out


# -- recursive (grafting) view of graphs

def split(gph: LoopGraph) -> tuple[LoopGraph, LoopGraph, bool]:
    """``gph = g1 v g2`` (bridged=False) or ``g1 |><| g2`` (bridged=True)."""
    t = gph.base
    if t.is_leaf:
        raise ValueError("cannot ungraft identity")
    cut = t.left.order  # last leaf index of the left branch
    left, right, bridges = [], [], []
    for a, b in gph.loops:
        if b <= cut:
            left.append((a, b))
        elif a > cut:
            right.append((a - cut - 1, b - cut - 1))
        else:
            bridges.append((a, b))
    if len(bridges) > 1:
        raise ValueError("more than one loop across the root is not supported")
    if bridges and bridges[0] != (cut, cut + 1):
        raise ValueError("root loop does not join the two boundary leaves")
    return LoopGraph(t.left, left), LoopGraph(t.right, right), bool(bridges)


def join(g1: LoopGraph, g2: LoopGraph, bridged: bool = False) -> LoopGraph | None:
    """Graft two graphs; with ``bridged`` also identify the two boundary leaves.

    Returns ``None`` when the bridge is impossible (a boundary leaf is taken).
    """
    cut = g1.base.order
    loops = list(g1.loops) + [(a + cut + 1, b + cut + 1) for a, b in g2.loops]
    if bridged:
        if not (g1.is_free(cut) and g2.is_free(0)):
            return None
        loops.append((cut, cut + 1))
    return LoopGraph(Tree(g1.base, g2.base), loops)


def mirror_graph(gph: LoopGraph) -> LoopGraph:
    n = gph.base.order
    return LoopGraph(mirror(gph.base), [(n - b, n - a) for a, b in gph.loops])


def root_bridged(gph: LoopGraph) -> bool:
    return not gph.base.is_leaf and split(gph)[2]


def same_branch(gph: LoopGraph) -> bool:
    """No loop joins the two branches at the root."""
    return not root_bridged(gph)


# -- enumeration

@lru_cache(maxsize=None)
def _closure(n: int, g: int, rule: ContractionRule) -> frozenset[LoopGraph]:
    if g == 0:
        return frozenset(LoopGraph(t) for t in enumerate_trees(n))
    out = set()
    for gph in _closure(n, g - 1, rule):
        out.update(contractions(gph, rule))
    return frozenset(out)


def _check_euler(n: int, g: int) -> None:
    if n < 0 or g < 0:
        raise ValueError("order and genus must be non-negative")
    if n + 2 - 2 * g < 1:
        raise ValueError("inconsistent Euler characteristic")


def enumerate_loop_graphs(n: int, g: int, rule: ContractionRule | None = None) -> list[LoopGraph]:
    """All distinct graphs of ``(Y^n)^g``, by closure of the move over ``Y^n``."""
    _check_euler(n, g)
    return sorted(_closure(n, g, rule or _rule))


@lru_cache(maxsize=None)
def _split_sum(n: int, g: int) -> tuple[tuple[LoopGraph, int], ...]:
    if n == 0:
        return ((LoopGraph(LEAF), 1),) if g == 0 else ()
    acc: Counter = Counter()
    for p in range(n):
        q = n - 1 - p
        for k in range(g + 1):
            for a, ca in _split_sum(p, k):
                for b, cb in _split_sum(q, g - k):
                    acc[join(a, b)] += ca * cb
        for k in range(g):
            for a, ca in _split_sum(p, g - 1 - k):
                for b, cb in _split_sum(q, k):
                    gph = join(a, b, bridged=True)
                    if gph is not None:
                        acc[gph] += ca * cb
    return tuple(sorted(acc.items()))


def genus_split(n: int, g: int) -> Counter:
    """Recursive assembly: same-branch graftings plus opposite-branch bridges.

    Uses the adjacent-leaf bridge only; compare with :func:`enumerate_loop_graphs`.
    """
    _check_euler(n, g)
    return Counter(dict(_split_sum(n, g)))


def split_components(n: int, g: int) -> tuple[Counter, Counter]:
    """The (same-branch, bridged) parts of :func:`genus_split`."""
    whole = genus_split(n, g)
    same = Counter({x: c for x, c in whole.items() if not root_bridged(x)})
    bridged = Counter({x: c for x, c in whole.items() if root_bridged(x)})
    return same, bridged


# -- weights

def graph_weight(gph: LoopGraph) -> int:
    """2 for a root-bridged graph symmetric under reflection (order >= 2), else 1."""
    if gph.base.order < 2 or not root_bridged(gph):
        return 1
    return 2 if mirror_graph(gph) == gph else 1


def weighted(graphs: Iterable[LoopGraph]) -> LinComb:
    return LinComb((x, graph_weight(x)) for x in graphs)


def weight_anomalies(n: int, g: int) -> list[LoopGraph]:
    """Graphs whose multiplicity in the recursive assembly exceeds 2."""
    return [x for x, c in genus_split(n, g).items() if c > 2]


def derivation_overcount_check(n: int, rule: ContractionRule | None = None) -> bool:
    """Same-branch moves on all same-branch 1-loop graphs hit each 2-loop one twice."""
    if n < 1:
        raise ValueError("order must be >= 1")
    rule = rule or _rule
    if n + 2 - 4 < 1:
        return True
    hits: Counter = Counter()
    for gph in _closure(n, 1, rule):
        if not same_branch(gph):
            continue
        for res in contractions(gph, rule):
            if same_branch(res):
                hits[res] += 1
    target = {x for x in _closure(n, 2, rule) if same_branch(x)}
    return set(hits) == target and all(c == 2 for c in hits.values())


# -- ungrafting of bridged graphs

def _reroot_left(t: Tree) -> Tree:
    """Re-root ``t`` at its leftmost leaf, keeping the cyclic order; the old root
    becomes the rightmost leaf."""
    spine_rights = []
    node = t
    while not node.is_leaf:
        spine_rights.append(node.right)
        node = node.left
    out = LEAF
    for b in spine_rights:
        out = Tree(b, out)
    return out


def _under(t1: Tree, t2: Tree) -> Tree:
    if t1.is_leaf:
        return t2
    return Tree(t1.left, _under(t1.right, t2))


def ungraft_graph(gph: LoopGraph) -> LoopGraph:
    """Remove the root vertex of a root-bridged graph.

    The bridge and its two leaves disappear; the left root edge (label ``q``)
    becomes the new root and the right root edge (``q-bar``) the rightmost
    leaf.  The result has order ``n - 1`` and genus ``g - 1``.
    """
    g1, g2, bridged = split(gph)
    if not bridged:
        raise ValueError("graph has no loop across the root")
    base = _under(g1.base, _reroot_left(g2.base))
    cut = g1.base.order
    removed = (cut, cut + 1)
    old_order = [i for i in range(gph.base.leaves) if i not in removed]
    index = {old: new for new, old in enumerate(old_order)}
    loops = [(index[a], index[b]) for a, b in gph.loops if (a, b) != removed]
    return LoopGraph(base, loops)
