"""The quantization operator and the h-graded product on loop graphs.

``Q`` adds one loop in every admissible way, recursively over the root
splitting: ``Q(g1 v g2) = Q(g1) v g2 + g1 v Q(g2) + g1 |><| g2``.  On a graph
already bridged at its root the bridge is carried along and no second one
can be made there.

The product of two graphs follows the grafting identity of the tree product,
carrying loops along and keeping a root bridge as a bridge between the same
two branches.  This is one choice among several compatible with the low
order examples; it lives in :func:`graph_star` alone.
"""

from __future__ import annotations

from functools import lru_cache

from .linear import LinComb, bilinear
from .loops import LoopGraph, enumerate_loop_graphs, join, split, weighted
from .trees import Tree


def _graph(x) -> LoopGraph:
    return x if isinstance(x, LoopGraph) else LoopGraph(x)


def _join_all(left: LinComb, right: LinComb, bridged: bool) -> LinComb:
    out: dict = {}
    for a, ca in left.items():
        for b, cb in right.items():
            res = join(a, b, bridged)
            if res is not None:
                out[res] = out.get(res, 0) + ca * cb
    return LinComb(out)


def _one(x: LoopGraph) -> LinComb:
    return LinComb.basis(x)


@lru_cache(maxsize=None)
def q_parts(x) -> tuple[LinComb, LinComb, LinComb]:
    """``(Q_L, Q_M, Q_R)`` of a graph; all zero on ``|``."""
    x = _graph(x)
    if x.base.is_leaf:
        return LinComb(), LinComb(), LinComb()
    g1, g2, bridged = split(x)
    q_left = _join_all(q_op(g1), _one(g2), bridged)
    q_right = _join_all(_one(g1), q_op(g2), bridged)
    q_mid = LinComb() if bridged else _join_all(_one(g1), _one(g2), True)
    return q_left, q_mid, q_right


def q_op(x) -> LinComb:
    """``Q`` on a graph (or tree); ``Q(|) = 0``."""
    left, mid, right = q_parts(x)
    return left + mid + right


def q_lin(a: LinComb) -> LinComb:
    return a.map_basis(q_op)


def q_power(a: LinComb, k: int) -> LinComb:
    for _ in range(k):
        a = q_lin(a)
    return a


def nilpotency_index(x) -> int:
    """Smallest ``k`` with ``Q^k(x) = 0``."""
    a = LinComb.basis(_graph(x))
    k = 0
    while a:
        a = q_lin(a)
        k += 1
    return k


# -- products of graphs

@lru_cache(maxsize=None)
def graph_star(a: LoopGraph, b: LoopGraph) -> LinComb:
    """``a *_h b`` for two graphs; lands in genus ``genus(a) + genus(b)``."""
    a, b = _graph(a), _graph(b)
    if b.base.is_leaf:
        return _one(a)
    if a.base.is_leaf:
        return _one(b)
    a1, a2, bridged_a = split(a)
    b1, b2, bridged_b = split(b)
    first = _join_all(_one(a1), graph_star(a2, b), bridged_a)
    second = _join_all(graph_star(a, b1), _one(b2), bridged_b)
    return first + second


def graph_star_lin(a: LinComb, b: LinComb) -> LinComb:
    return bilinear(graph_star, a, b)


class HSeries:
    """Truncated power series in ``h`` whose coefficients are graph combinations.

    The coefficient of ``h^g`` may only hold genus ``g`` graphs.  ``order``
    records the Euler characteristic ``-n`` when the series is some ``W^(n)``.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        cs = [c if isinstance(c, LinComb) else LinComb(c) for c in coeffs]
        for g, c in enumerate(cs):
            for x in c:
                if not isinstance(x, LoopGraph) or x.genus != g:
                    raise ValueError(f"coefficient of h^{g} holds {x}, not a genus {g} graph")
        while len(cs) > 1 and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs) if cs else (LinComb(),)
        self.order = order

    @classmethod
    def classical(cls, a: LinComb) -> "HSeries":
        return cls([a.map_basis(_graph)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coef(self, g: int) -> LinComb:
        return self.coeffs[g] if 0 <= g < len(self.coeffs) else LinComb()

    def __add__(self, other: "HSeries") -> "HSeries":
        n = max(len(self.coeffs), len(other.coeffs))
        return HSeries([self.coef(g) + other.coef(g) for g in range(n)])

    def __mul__(self, other: "HSeries") -> "HSeries":
        return hseries_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HSeries):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coef(g) == other.coef(g) for g in range(n))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"HSeries(degree={self.degree})"


def hseries_mul(a: HSeries, b: HSeries) -> HSeries:
    """Cauchy product in ``h`` with :func:`graph_star` on the coefficients."""
    n = a.degree + b.degree + 1
    out = []
    for k in range(n):
        acc = LinComb()
        for i in range(k + 1):
            acc = acc + graph_star_lin(a.coef(i), b.coef(k - i))
        out.append(acc)
    return HSeries(out)


def graphs_of(t: Tree, g: int) -> list[LoopGraph]:
    """All ``g``-loop graphs with base ``t``."""
    n = t.order
    if n + 2 - 2 * g < 1:
        return []
    return [x for x in enumerate_loop_graphs(n, g) if x.base == t]


def quantum_lift(a: LinComb) -> HSeries:
    """A classical tree combination seen in ``Corr_h``: each tree together with
    all its loop graphs, ``h^g`` marking genus ``g``."""
    top = max((genus_bound(t.order) for t in a), default=0)
    coeffs = []
    for g in range(top + 1):
        coeffs.append(LinComb((x, c) for t, c in a.items() for x in graphs_of(t, g)))
    return HSeries(coeffs)


def quantum_star(a, b) -> HSeries:
    """``a *_h b``.  Tree combinations are lifted first; series are used as they are."""
    sa = quantum_lift(a) if isinstance(a, LinComb) else a
    sb = quantum_lift(b) if isinstance(b, LinComb) else b
    return hseries_mul(sa, sb)


def genus_bound(n: int) -> int:
    """Top power of ``h`` in ``W^(n)``: ``n/2`` for even ``n``, ``(n+1)/2`` for odd."""
    if n < 0:
        raise ValueError("order must be non-negative")
    return (n + 1) // 2


def kmin(n: int) -> int:
    """Labels left at the top genus: 1 for odd ``n``, 2 for even ``n``."""
    return n + 2 - 2 * genus_bound(n)


def build_W(n: int) -> HSeries:
    """``W^(n) = W^0_{n+2} + h W^1_n + ...`` with graph weights."""
    if n < 1:
        raise ValueError("order must be >= 1")
    coeffs = [weighted(enumerate_loop_graphs(n, g)) for g in range(genus_bound(n) + 1)]
    return HSeries(coeffs, order=n)


def summary(series: HSeries) -> str:
    """``W3^0 + h*W1^1`` style view of a ``W^(n)`` series."""
    if series.order is None:
        raise ValueError("summary needs the order of the series")
    n = series.order
    parts = []
    for g in range(len(series.coeffs)):
        if not series.coef(g):
            continue
        name = f"W{n + 2 - 2 * g}^{g}"
        parts.append(name if g == 0 else (f"h*{name}" if g == 1 else f"h^{g}*{name}"))
    return " + ".join(parts) if parts else "0"
