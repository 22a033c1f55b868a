"""Matrix quantum pseudodifferential operators.

An :class:`Element` is a finite sum of monomials ``c * z^k * T^m * E[i,j]``
where ``T`` is the q-dilation ``f(z) -> f(qz)``.  Matrix indices are
1-based.  The only nontrivial commutation rule is ``T^m z^k = q^{km} z^k T^m``,
so the product of two monomials is

    (c1 z^k1 T^m1 E[i1,j1]) (c2 z^k2 T^m2 E[i2,j2])
        = delta(j1, i2) c1 c2 q^(k2 m1) z^(k1+k2) T^(m1+m2) E[i1,j2].
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .scalar import ONE, ZERO, FieldElement, Scalar

Key = Tuple[int, int, int, int]  # (k, m, i, j)

__all__ = [
    "Element",
    "monomial",
    "identity",
    "multiply",
    "bracket",
    "weight",
    "graded_decompose",
    "triangular_split",
    "canonicalize",
]


class Element:
    """Immutable finite sum of ``coeff * z^k T^m E[i,j]`` for fixed matrix size N."""

    __slots__ = ("N", "_terms", "_hash")

    def __init__(self, N: int, terms: Mapping[Key, FieldElement] | None = None):
        if N < 1:
            raise ValueError("matrix size N must be positive")
        self.N = N
        clean = {}
        for key, c in (terms or {}).items():
            k, m, i, j = key
            if not (1 <= i <= N and 1 <= j <= N):
                raise IndexError(f"matrix index E[{i},{j}] out of range for N={N}")
            c = FieldElement.coerce(c)
            if c:
                clean[key] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, N: int, terms: Dict[Key, FieldElement]) -> "Element":
        obj = object.__new__(cls)
        obj.N = N
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, N: int) -> "Element":
        return cls._trusted(N, {})

    @property
    def terms(self) -> Dict[Key, FieldElement]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Key, FieldElement]]:
        """Terms in canonical (lexicographic on (k, m, i, j)) order."""
        for key in sorted(self._terms):
            yield key, self._terms[key]

    def keys(self):
        return self._terms.keys()

    def coeff(self, k: int, m: int, i: int, j: int) -> FieldElement:
        return self._terms.get((k, m, i, j), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.N == other.N and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.N, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.N != self.N:
            raise ValueError(f"size mismatch: N={self.N} vs N={other.N}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return Element._trusted(self.N, out)

    def __neg__(self) -> "Element":
        return Element._trusted(self.N, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c: Scalar) -> "Element":
        c = FieldElement.coerce(c)
        if not c:
            return Element.zero(self.N)
        return Element._trusted(self.N, {key: c * x for key, x in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __repr__(self) -> str:
        return f"Element(N={self.N}, {self})"

    def __str__(self) -> str:
        from .parser import format_element

        return format_element(self)


def monomial(N: int, k: int, m: int, i: int, j: int, coeff: Scalar = 1) -> Element:
    """``coeff * z^k T^m E[i,j]``."""
    return Element(N, {(k, m, i, j): FieldElement.coerce(coeff)})


def identity(N: int) -> Element:
    return Element._trusted(N, {(0, 0, i, i): ONE for i in range(1, N + 1)})


def multiply(a: Element, b: Element) -> Element:
    """Associative product in the algebra; bilinear extension of the monomial rule."""
    a._check(b)
    by_row = defaultdict(list)
    for (k2, m2, i2, j2), c2 in b._terms.items():
        by_row[i2].append((k2, m2, j2, c2))
    out: Dict[Key, FieldElement] = {}
    for (k1, m1, i1, j1), c1 in a._terms.items():
        for k2, m2, j2, c2 in by_row.get(j1, ()):
            c = c1 * c2
            e = 2 * k2 * m1
            if e:
                c = c * FieldElement.monomial(1, e)
            key = (k1 + k2, m1 + m2, i1, j2)
            s = out.get(key)
            out[key] = c if s is None else s + c
    return Element._trusted(a.N, {key: c for key, c in out.items() if c})


def bracket(a: Element, b: Element) -> Element:
    """Commutator ``ab - ba``."""
    return multiply(a, b) - multiply(b, a)


def weight(N: int, key: Key) -> int:
    """Principal weight ``kN + i - j`` of a basis monomial."""
    k, _, i, j = key
    return k * N + i - j


def graded_decompose(a: Element) -> Dict[int, Element]:
    bands: Dict[int, Dict[Key, FieldElement]] = defaultdict(dict)
    for key, c in a._terms.items():
        bands[weight(a.N, key)][key] = c
    return {w: Element._trusted(a.N, t) for w, t in sorted(bands.items())}


def homogeneous_weight(a: Element) -> int | None:
    """Weight of a nonzero homogeneous element, else None."""
    ws = {weight(a.N, key) for key in a._terms}
    return ws.pop() if len(ws) == 1 else None


def triangular_split(a: Element) -> Tuple[Element, Element, Element]:
    """(positive-weight part, weight-zero part, negative-weight part)."""
    parts = ({}, {}, {})
    for key, c in a._terms.items():
        w = weight(a.N, key)
        parts[0 if w > 0 else 1 if w == 0 else 2][key] = c
    return tuple(Element._trusted(a.N, p) for p in parts)


def canonicalize(N: int, raw: Iterable[Tuple[Scalar, Key]]) -> Element:
    """Merge a raw list of ``(coeff, (k, m, i, j))`` terms into canonical form."""
    acc: Dict[Key, FieldElement] = {}
    for c, key in raw:
        k, m, i, j = key
        if not (1 <= i <= N and 1 <= j <= N):
            raise IndexError(f"matrix index E[{i},{j}] out of range for N={N}")
        c = FieldElement.coerce(c)
        s = acc.get(key)
        acc[key] = c if s is None else s + c
    return Element._trusted(N, {key: c for key, c in acc.items() if c})
