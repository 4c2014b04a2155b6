"""Permutations, shuffles and the Hopf algebra k[S^oo].

Composition follows ``rho * sigma = rho o sigma`` (apply ``sigma`` first).  With
that convention the product of ``rho`` and ``sigma`` is the sum of
``alpha o (rho x sigma)`` over (p, q)-shuffles ``alpha``, and the unique
decomposition ``sigma = (sigma_i x sigma'_{n-i}) o w^-1`` reads off the values
``<= i`` and ``> i`` of ``sigma`` in positional order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import comb

from .linear import LinComb, bilinear


class Perm:
    """A permutation of ``{1..n}`` stored by its images."""

    __slots__ = ("images", "_hash")

    def __init__(self, images=()):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(("Perm", images))

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    @property
    def order(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for pos, val in enumerate(self.images, 1):
            inv[val - 1] = pos
        return Perm(inv)

    def sort_key(self) -> tuple:
        return (0, len(self.images), self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Perm") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Perm({self})"

    def __str__(self) -> str:
        if not self.images:
            return "e"
        sep = "" if len(self.images) < 10 else ","
        return sep.join(map(str, self.images))


EMPTY = Perm()


def std(seq) -> Perm:
    """Standard permutation: same relative order as ``seq`` (distinct values)."""
    ranks = {v: r for r, v in enumerate(sorted(seq), 1)}
    return Perm(ranks[v] for v in seq)


def compose(rho: Perm, sigma: Perm) -> Perm:
    if len(rho) != len(sigma):
        raise ValueError("order mismatch")
    return Perm(rho.images[s - 1] for s in sigma.images)


@lru_cache(maxsize=None)
def shuffles(p: int, q: int) -> tuple[Perm, ...]:
    """All (p, q)-shuffles, i.e. permutations increasing on 1..p and on p+1..p+q."""
    if p < 0 or q < 0:
        raise ValueError("shuffle type must be non-negative")
    n = p + q
    out = []
    for first in combinations(range(1, n + 1), p):
        rest = [v for v in range(1, n + 1) if v not in first]
        out.append(Perm(first + tuple(rest)))
    return tuple(sorted(out))


def cross(rho: Perm, sigma: Perm) -> Perm:
    k = len(rho)
    return Perm(rho.images + tuple(s + k for s in sigma.images))


def decompose(sigma: Perm, i: int) -> tuple[Perm, Perm, Perm]:
    """Return ``(sigma_i, sigma'_{n-i}, w)`` with ``sigma o w = sigma_i x sigma'``."""
    n = len(sigma)
    if not 0 <= i <= n:
        raise ValueError(f"split index {i} outside 0..{n}")
    low_pos = [p for p, v in enumerate(sigma.images, 1) if v <= i]
    high_pos = [p for p, v in enumerate(sigma.images, 1) if v > i]
    w = Perm(low_pos + high_pos)
    left = Perm(sigma(p) for p in low_pos)
    right = Perm(sigma(p) - i for p in high_pos)
    return left, right, w


def star_perm(rho: Perm, sigma: Perm) -> LinComb:
    base = cross(rho, sigma)
    return LinComb((compose(alpha, base), 1) for alpha in shuffles(len(rho), len(sigma)))


def coproduct_perm(sigma: Perm) -> LinComb:
    terms = []
    for i in range(len(sigma) + 1):
        left, right, _ = decompose(sigma, i)
        terms.append(((left, right), 1))
    return LinComb(terms)


def star(a: LinComb, b: LinComb) -> LinComb:
    """Bilinear extension of ``star_perm`` to linear combinations."""
    return bilinear(star_perm, a, b)


def coproduct(a: LinComb) -> LinComb:
    return a.map_basis(coproduct_perm)


def all_perms(n: int) -> list[Perm]:
    return [Perm(p) for p in permutations(range(1, n + 1))]


def shuffle_count(p: int, q: int) -> int:
    return comb(p + q, p)


__all__ = [
    "EMPTY",
    "Perm",
    "all_perms",
    "compose",
    "coproduct",
    "coproduct_perm",
    "cross",
    "decompose",
    "shuffle_count",
    "shuffles",
    "star",
    "star_perm",
    "std",
]
