"""Exact arithmetic in the rational function field Q(v), with q = v**2.

Every constant used by the algebra lives here.  Working with a formal ``v``
rather than a complex number keeps ``q`` generic (never a root of unity) and
makes half-integer powers of ``q`` exact: ``q**(1/2) == v``.

Internally an element is stored as ``v**val * num / den`` where ``num`` and
``den`` are integer polynomials (ascending coefficient tuples) with nonzero
constant terms, ``gcd(num, den) == 1`` including content, and ``den`` has a
positive leading coefficient.  The canonical numerator/denominator pair is
recovered by moving ``v**val`` to the appropriate side.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple, Union

Poly = Tuple[int, ...]

__all__ = ["FieldElement", "q_power", "normalize", "field_arith", "ZERO", "ONE", "V", "Q"]


# --- integer polynomial helpers (ascending coefficients, no trailing zeros) ---


def _trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _content(a: Poly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _pdiv_exact(a: Poly, b: Poly) -> Poly:
    """Quotient a / b, which must divide exactly over the integers."""
    if len(b) == 1:
        d = b[0]
        return tuple(c // d for c in a)
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            qc = c // lb
            quot[i - db] = qc
            for j, y in enumerate(b):
                a[i - db + j] -= qc * y
    return _trim(quot)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [lb * x for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a = list(_trim(a))
    return tuple(a)


def _primitive(a: Poly) -> Poly:
    g = _content(a)
    if g in (0, 1):
        return a
    return tuple(c // g for c in a)


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Gcd over Z[v], normalized to a positive leading coefficient."""
    if not a:
        return b if not b or b[-1] > 0 else _pneg(b)
    if not b:
        return a if a[-1] > 0 else _pneg(a)
    if len(a) == 1 or len(b) == 1:
        return (gcd(_content(a), _content(b)),)
    c = gcd(_content(a), _content(b))
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r) if r else r
    g = _pmul((c,), a)
    return g if g[-1] > 0 else _pneg(g)


def _strip_v(p: Poly) -> Tuple[int, Poly]:
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return k, p[k:]


# --- the field element --------------------------------------------------------


Scalar = Union["FieldElement", int, Fraction]


class FieldElement:
    """Immutable element of Q(v); ``q`` is ``v**2``."""

    __slots__ = ("_val", "_num", "_den", "_hash")

    def __init__(self, numerator: Sequence[int] = (), denominator: Sequence[int] = (1,)):
        val, num, den = _canonical(_trim(numerator), _trim(denominator))
        self._val, self._num, self._den = val, num, den
        self._hash = None

    @classmethod
    def _raw(cls, val: int, num: Poly, den: Poly) -> "FieldElement":
        obj = object.__new__(cls)
        obj._val, obj._num, obj._den = val, num, den
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: int, exponent: int) -> "FieldElement":
        """``coeff * v**exponent``."""
        if coeff == 0:
            return ZERO
        return cls._raw(exponent, (coeff,), (1,))

    @classmethod
    def coerce(cls, x: Scalar) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, int):
            return cls.monomial(x, 0) if x else ZERO
        if isinstance(x, Fraction):
            return cls((x.numerator,), (x.denominator,))
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldElement")

    # canonical numerator / denominator with v-powers folded back in
    @property
    def numerator(self) -> Poly:
        if self._val > 0:
            return (0,) * self._val + self._num
        return self._num

    @property
    def denominator(self) -> Poly:
        if self._val < 0:
            return (0,) * (-self._val) + self._den
        return self._den

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def is_monomial(self) -> bool:
        """True for ``c * v**k`` with c an integer."""
        return len(self._num) == 1 and self._den == (1,)

    def monomial_data(self) -> Tuple[int, int]:
        """(coefficient, exponent) of a monomial element."""
        if not self.is_monomial():
            raise ValueError(f"{self} is not a monomial")
        return self._num[0], self._val

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FieldElement.coerce(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self._val == other._val and self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._val, self._num, self._den))
        return self._hash

    def __neg__(self) -> "FieldElement":
        return FieldElement._raw(self._val, _pneg(self._num), self._den)

    def __add__(self, other: Scalar) -> "FieldElement":
        o = _co(other)
        if o is NotImplemented:
            return o
        if not o._num:
            return self
        if not self._num:
            return o
        if self._den == (1,) and o._den == (1,):
            if self._val <= o._val:
                lo, hi = self, o
            else:
                lo, hi = o, self
            shift = hi._val - lo._val
            num = _padd(lo._num, (0,) * shift + hi._num)
            k, num = _strip_v(num)
            if not num:
                return ZERO
            return FieldElement._raw(lo._val + k, num, (1,))
        base = min(self._val, o._val)
        a = _pmul((0,) * (self._val - base) + self._num, o._den)
        b = _pmul((0,) * (o._val - base) + o._num, self._den)
        num = _padd(a, b)
        if not num:
            return ZERO
        k, num = _strip_v(num)
        den = _pmul(self._den, o._den)
        return _from_parts(base + k, num, den)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "FieldElement":
        o = _co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "FieldElement":
        return _co(other) + (-self)

    def __mul__(self, other: Scalar) -> "FieldElement":
        o = _co(other)
        if o is NotImplemented:
            return o
        if not self._num or not o._num:
            return ZERO
        val = self._val + o._val
        if self._den == (1,) and o._den == (1,):
            return FieldElement._raw(val, _pmul(self._num, o._num), (1,))
        # cross-cancel like Fraction.__mul__
        g1 = _pgcd(self._num, o._den)
        g2 = _pgcd(o._num, self._den)
        n1, d2 = (_pdiv_exact(self._num, g1), _pdiv_exact(o._den, g1)) if g1 != (1,) else (self._num, o._den)
        n2, d1 = (_pdiv_exact(o._num, g2), _pdiv_exact(self._den, g2)) if g2 != (1,) else (o._num, self._den)
        num, den = _pmul(n1, n2), _pmul(d1, d2)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return FieldElement._raw(val, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self._num:
            raise ZeroDivisionError("inverse of zero in Q(v)")
        num, den = self._den, self._num
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return FieldElement._raw(-self._val, num, den)

    def __truediv__(self, other: Scalar) -> "FieldElement":
        o = _co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        return _co(other) * self.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if not isinstance(e, int):
            raise TypeError("only integer powers are defined")
        if e < 0:
            return self.inverse() ** (-e)
        if self.is_monomial():
            c, k = self._num[0], self._val
            return FieldElement._raw(k * e, (c**e,), (1,))
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self) -> str:
        return f"FieldElement({self})"

    def __str__(self) -> str:
        return format_scalar(self)


def _co(x: Scalar) -> FieldElement:
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement.coerce(x)
    return NotImplemented


def _from_parts(val: int, num: Poly, den: Poly) -> FieldElement:
    """Build from num/den with nonzero constant terms; cancels the gcd."""
    g = _pgcd(num, den)
    if g != (1,):
        num, den = _pdiv_exact(num, g), _pdiv_exact(den, g)
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return FieldElement._raw(val, num, den)


def _canonical(num: Poly, den: Poly) -> Tuple[int, Poly, Poly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return 0, (), (1,)
    kn, num = _strip_v(num)
    kd, den = _strip_v(den)
    e = _from_parts(kn - kd, num, den)
    return e._val, e._num, e._den


ZERO = FieldElement._raw(0, (), (1,))
ONE = FieldElement._raw(0, (1,), (1,))
V = FieldElement._raw(1, (1,), (1,))
Q = FieldElement._raw(2, (1,), (1,))


def normalize(numerator: Sequence[int], denominator: Sequence[int]) -> FieldElement:
    """Canonical element for a raw numerator/denominator pair (ascending coefficients)."""
    return FieldElement(numerator, denominator)


def q_power(e: Union[int, Fraction, float]) -> FieldElement:
    """``q**e`` for a half-integer e, i.e. ``v**(2e)``."""
    twice = Fraction(e) * 2
    if twice.denominator != 1:
        raise ValueError(f"q-exponent {e} is not a half-integer")
    return FieldElement.monomial(1, int(twice))


def field_arith(op: str, a: Scalar, b: Scalar) -> FieldElement:
    a, b = FieldElement.coerce(a), FieldElement.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


# --- printing -----------------------------------------------------------------


def _format_poly_terms(p: Poly, shift: int):
    """Yield (sign, text) for each nonzero term, highest degree first."""
    for d in range(len(p) - 1, -1, -1):
        c = p[d]
        if not c:
            continue
        e = d + shift
        if e == 0:
            var = ""
        elif e % 2 == 0:
            var = "q" if e == 2 else f"q^{e // 2}"
        else:
            var = "v" if e == 1 else f"v^{e}"
        a = abs(c)
        if not var:
            body = str(a)
        elif a == 1:
            body = var
        else:
            body = f"{a}*{var}"
        yield (c < 0), body


def _format_poly(p: Poly, shift: int = 0) -> str:
    out = []
    for i, (neg, body) in enumerate(_format_poly_terms(p, shift)):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) or "0"


def format_scalar(x: FieldElement) -> str:
    """Text accepted back by the scalar parser; even powers of v print as q."""
    if not x._num:
        return "0"
    if x._den == (1,):
        return _format_poly(x._num, x._val)
    num = _format_poly(x.numerator)
    den = _format_poly(x.denominator)
    if len(x.numerator) - x.numerator.count(0) > 1:
        num = f"({num})"
    if len(x.denominator) - x.denominator.count(0) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"
