"""Finite formal sums with exact rational coefficients.

Basis elements are any hashable objects exposing ``sort_key()``; tuples of
such objects stand for tensor products.  Coefficients are kept as
``fractions.Fraction`` and zero terms are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator


def sort_key(basis) -> tuple:
    if isinstance(basis, tuple):
        return (len(basis),) + tuple(sort_key(b) for b in basis)
    return basis.sort_key()


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class LinComb:
    """Immutable finite sum ``sum c_b * b`` over basis objects ``b``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | Iterable | None = None):
        acc: dict = {}
        if terms is None:
            items: Iterable = ()
        elif isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        for b, c in items:
            c = _coerce(c)
            if c:
                acc[b] = acc.get(b, 0) + c
        self._terms = {b: c for b, c in acc.items() if c}
        self._hash = None

    @classmethod
    def basis(cls, b, coef=1) -> "LinComb":
        return cls({b: coef})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    # -- container protocol
    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms, key=sort_key))

    def items(self) -> list[tuple[Hashable, Fraction]]:
        return [(b, self._terms[b]) for b in self]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, b) -> bool:
        return b in self._terms

    def coef(self, b) -> Fraction:
        return self._terms.get(b, Fraction(0))

    __getitem__ = coef

    # -- vector space
    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        acc = dict(self._terms)
        for b, c in other._terms.items():
            acc[b] = acc.get(b, 0) + c
        return LinComb(acc)

    def __neg__(self) -> "LinComb":
        return LinComb({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = _coerce(c)
        return LinComb({b: c * v for b, v in self._terms.items()})

    def __rmul__(self, c) -> "LinComb":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def map_basis(self, f: Callable) -> "LinComb":
        """Linear extension of ``f``; ``f`` returns a LinComb or a basis element."""
        out: dict = {}
        for b, c in self._terms.items():
            img = f(b)
            if isinstance(img, LinComb):
                for b2, c2 in img._terms.items():
                    out[b2] = out.get(b2, 0) + c * c2
            elif img is not None:
                out[img] = out.get(img, 0) + c
        return LinComb(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{b!r}: {c}" for b, c in self.items())
        return f"LinComb({{{inner}}})"


def bilinear(f: Callable, a: LinComb, b: LinComb) -> LinComb:
    """Extend ``f(basis, basis) -> LinComb`` bilinearly."""
    out: dict = {}
    for x, cx in a._terms.items():
        for y, cy in b._terms.items():
            for z, cz in f(x, y)._terms.items():
                out[z] = out.get(z, 0) + cx * cy * cz
    return LinComb(out)


def tensor(*factors: LinComb) -> LinComb:
    """Tensor product; basis elements of the result are flat tuples."""
    result = LinComb({(): 1})
    for fac in factors:
        out: dict = {}
        for x, cx in result._terms.items():
            for y, cy in fac._terms.items():
                key = x + (y if isinstance(y, tuple) else (y,))
                out[key] = out.get(key, 0) + cx * cy
        result = LinComb(out)
    return result


def apply_at(a: LinComb, slot: int, f: Callable) -> LinComb:
    """Apply a linear map ``f`` (basis -> LinComb) to one tensor slot."""
    out: dict = {}
    for key, c in a._terms.items():
        for img, ci in f(key[slot])._terms.items():
            img_t = img if isinstance(img, tuple) else (img,)
            new = key[:slot] + img_t + key[slot + 1:]
            out[new] = out.get(new, 0) + c * ci
    return LinComb(out)


def componentwise(f: Callable, a: LinComb, b: LinComb) -> LinComb:
    """Product on tensor powers: ``(x1⊗..⊗xk)·(y1⊗..⊗yk) = f(x1,y1)⊗..``."""
    out = LinComb()
    for x, cx in a._terms.items():
        for y, cy in b._terms.items():
            if len(x) != len(y):
                raise ValueError("tensor rank mismatch")
            out = out + tensor(*(f(u, v) for u, v in zip(x, y))).scale(cx * cy)
    return out
