"""Gradation-preserving anti-involutions of the matrix algebra.

Two families, selected by :class:`InvolutionParams`:

* ``n < N``: ``sigma_{eps,B,c,n}`` with ``eps = +-1`` and ``r = 0``;
* ``n = N``: ``sigma_{A,B,c,r,N}`` subject to ``A^2 (B/q)^r = 1``.

Both are fixed on generators (``E[i,i]``, ``zE[i,i]``, ``T E[i,i]`` and the
matrix units) and extended anti-multiplicatively.  :func:`sigma_apply_oracle`
does that extension literally; :func:`sigma_apply` uses the closed forms
(the monomial formula for ``n = N``, the four block maps for ``n < N``).
The two are checked against each other in the test-suite.

The matrix ``c`` is carried by its subdiagonal ``cvec[i-1] = c_{i+1,i}``;
every other entry is the product ``c_{ij} = c_{i,i-1} ... c_{j+1,j}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Element, Key, weight
from .scalar import ONE, Q, ZERO, FieldElement, Scalar, q_power

__all__ = [
    "InvolutionParams",
    "ValidityReport",
    "InvalidParamsError",
    "pi_n",
    "coefficient_matrix",
    "validate_params",
    "sigma_generator_image",
    "sigma_apply_oracle",
    "sigma_apply",
    "dot_sigma",
    "dagger",
    "dagger_block",
    "theta",
    "gamma",
    "ad_J",
    "apply_automorphism",
    "sigma_transpose_variant",
    "valid_sign_patterns",
    "random_admissible_cvec",
]

MINUS_ONE = -ONE


class InvalidParamsError(ValueError):
    """Raised when an operation needs a valid anti-involution and gets another."""

    def __init__(self, report: "ValidityReport"):
        self.report = report
        super().__init__("; ".join(f"{e.constraint}: {e.detail}" for e in report.failures()))


@dataclass(frozen=True)
class InvolutionParams:
    """Selects one anti-involution from the classified family.

    ``epsilon`` is the sign for ``n < N`` and doubles as ``A`` when ``n = N``.
    """

    N: int
    n: int
    epsilon: FieldElement = ONE
    B: FieldElement = Q
    r: int = 0
    cvec: Tuple[FieldElement, ...] = ()

    @classmethod
    def make(
        cls,
        N: int,
        n: int,
        epsilon: Scalar = 1,
        B: Scalar = Q,
        r: int = 0,
        c: Optional[Sequence[Scalar]] = None,
        A: Optional[Scalar] = None,
    ) -> "InvolutionParams":
        if A is not None:
            epsilon = A
        cvec = tuple(FieldElement.coerce(x) for x in (c if c is not None else [1] * (N - 1)))
        return cls(N, n, FieldElement.coerce(epsilon), FieldElement.coerce(B), int(r), cvec)

    @property
    def A(self) -> FieldElement:
        return self.epsilon

    @property
    def t(self) -> int:
        return self.N - self.n

    @property
    def full(self) -> bool:
        return self.n == self.N

    def c(self, i: int, j: int) -> FieldElement:
        """Entry ``c_{ij}`` for ``i > j``."""
        return coefficient_matrix(self)[(i, j)]

    def with_(self, **changes) -> "InvolutionParams":
        d = dict(N=self.N, n=self.n, epsilon=self.epsilon, B=self.B, r=self.r, cvec=self.cvec)
        d.update(changes)
        return InvolutionParams(**d)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "epsilon" if not self.full else "A": str(self.epsilon),
            "B": str(self.B),
            "r": self.r,
            "c": [str(x) for x in self.cvec],
        }


@dataclass(frozen=True)
class ConstraintResult:
    constraint: str
    status: str  # "ok" | "fail"
    detail: str = ""

    def to_dict(self) -> dict:
        return {"constraint": self.constraint, "status": self.status, "detail": self.detail}


@dataclass
class ValidityReport:
    params: InvolutionParams
    entries: List[ConstraintResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.status == "ok" for e in self.entries)

    def failures(self) -> List[ConstraintResult]:
        return [e for e in self.entries if e.status != "ok"]

    def add(self, constraint: str, ok: bool, detail: str = "") -> None:
        self.entries.append(ConstraintResult(constraint, "ok" if ok else "fail", detail))

    def to_list(self) -> List[dict]:
        return [e.to_dict() for e in self.entries]


def pi_n(n: int, N: int, i: int) -> int:
    """Reverse ``1..n`` and ``n+1..N`` separately."""
    if not (1 <= n <= N) or not (1 <= i <= N):
        raise ValueError(f"pi_n needs 1 <= n <= N and 1 <= i <= N (got n={n}, N={N}, i={i})")
    return n - i + 1 if i <= n else N + n + 1 - i


@lru_cache(maxsize=4096)
def coefficient_matrix(p: InvolutionParams) -> Dict[Tuple[int, int], FieldElement]:
    """All ``c_{ij}`` (i > j) as products of consecutive subdiagonal entries."""
    out = {}
    for j in range(1, p.N + 1):
        acc = ONE
        for i in range(j + 1, p.N + 1):
            acc = acc * p.cvec[i - 2]
            out[(i, j)] = acc
    return out


def _cfactor(p: InvolutionParams, i: int, j: int) -> FieldElement:
    if i > j:
        return coefficient_matrix(p)[(i, j)]
    if i < j:
        return coefficient_matrix(p)[(j, i)].inverse()
    return ONE


# --- validation ---------------------------------------------------------------


def _fixed_points(N: int, n: int) -> List[int]:
    """Indices of c_i forced to square to one by the pairing constraints."""
    t = N - n
    pts = []
    if n % 2 == 0 and n >= 2:
        pts.append(n // 2)
    if n < N and t % 2 == 0 and t >= 2:
        pts.append(n + t // 2)
    return pts


def validate_params(p: InvolutionParams) -> ValidityReport:
    rep = ValidityReport(p)
    N, n = p.N, p.n
    if not (N >= 1 and 1 <= n <= N) or len(p.cvec) != N - 1:
        rep.add("structure", False, f"need 1 <= n <= N and N-1 coefficients (N={N}, n={n}, len(c)={len(p.cvec)})")
        return rep
    zeros = [i + 1 for i, x in enumerate(p.cvec) if x.is_zero()]
    rep.add("nonzero", not zeros and not p.B.is_zero() and not p.epsilon.is_zero(),
            f"zero entries at c{zeros}" if zeros else ("B or epsilon is zero" if p.B.is_zero() or p.epsilon.is_zero() else ""))
    if not rep.ok:
        return rep
    c = {i + 1: x for i, x in enumerate(p.cvec)}
    t = N - n

    if p.full:
        rel = p.A * p.A * (p.B / Q) ** p.r
        rep.add("A^2(B/q)^r=1", rel == ONE, f"A^2(B/q)^r = {rel}")
    else:
        rep.add("epsilon=+-1", p.epsilon in (ONE, MINUS_ONE), f"epsilon = {p.epsilon}")
        rep.add("r=0", p.r == 0, f"r = {p.r}")

    bad = [(i, n - i) for i in range(1, n) if c[i] * c[n - i] != ONE]
    rep.add("c_i*c_(n-i)=1", not bad, f"violated at {bad}" if bad else "")
    if not p.full:
        bad = [(n + i, N - i) for i in range(1, t) if c[n + i] * c[N - i] != ONE]
        rep.add("c_(n+i)*c_(N-i)=1", not bad, f"violated at {bad}" if bad else "")

        prod = ONE
        for i in range(1, N):
            if i != n:
                prod = prod * c[i]
        if p.epsilon == MINUS_ONE and N % 2 == 0 and n % 2 == 1:
            rep.add("impossible case", False,
                    "impossible case: N even and n odd leave no fixed point, so case - has no anti-involution")
        else:
            rep.add("prod_(i!=n) c_i=epsilon", prod == p.epsilon, f"product = {prod}")
            pts = _fixed_points(N, n)
            signs = [c[i] for i in pts]
            fp = ONE
            for x in signs:
                fp = fp * x
            shown = {i: str(x) for i, x in zip(pts, signs)}
            if p.epsilon == MINUS_ONE:
                need = "case - needs exactly one fixed point equal to -1" if len(pts) == 2 else "case - needs it equal to -1"
            else:
                need = "case + needs their product equal to 1"
            rep.add("fixed-point signs", all(x in (ONE, MINUS_ONE) for x in signs) and fp == p.epsilon,
                    f"fixed points {shown}; {need}")
    return rep


@lru_cache(maxsize=4096)
def _is_valid(p: InvolutionParams) -> bool:
    return validate_params(p).ok


def require_valid(p: InvolutionParams) -> None:
    if not _is_valid(p):
        raise InvalidParamsError(validate_params(p))


# --- generator images and the oracle extension -------------------------------

Mono = Tuple[FieldElement, int, int, int, int]  # (coeff, k, m, i, j)


def _mono_mul(a: Mono, b: Mono) -> Optional[Mono]:
    c1, k1, m1, i1, j1 = a
    c2, k2, m2, i2, j2 = b
    if j1 != i2:
        return None
    c = c1 * c2
    if k2 * m1:
        c = c * FieldElement.monomial(1, 2 * k2 * m1)
    return (c, k1 + k2, m1 + m2, i1, j2)


GENERATOR_KINDS = ("E", "z", "zinv", "T", "Tinv")


def _generator_mono(p: InvolutionParams, kind: str, i: int, j: Optional[int] = None) -> Mono:
    N, n = p.N, p.n
    pi = lambda x: pi_n(n, N, x)  # noqa: E731
    if kind == "E":
        j = i if j is None else j
        if i == j:
            return (ONE, 0, 0, pi(i), pi(i))
        if i > j:
            return (_cfactor(p, i, j), 1 if (i > n >= j) else 0, 0, pi(j), pi(i))
        return (_cfactor(p, i, j), -1 if (i <= n < j) else 0, 0, pi(j), pi(i))
    if j is not None and j != i:
        raise ValueError(f"generator {kind} is diagonal; got E[{i},{j}]")
    a = pi(i)
    if kind == "z":
        return (p.A, 1, p.r, a, a)
    if kind == "zinv":
        return (p.A.inverse() * q_power(p.r), -1, -p.r, a, a)
    bt = p.B * (ONE if i <= n else Q.inverse())
    if kind == "T":
        return (bt, 0, -1, a, a)
    if kind == "Tinv":
        return (bt.inverse(), 0, 1, a, a)
    raise ValueError(f"unknown generator kind {kind!r}")


def _mono_element(N: int, m: Optional[Mono]) -> Element:
    if m is None:
        return Element.zero(N)
    c, k, mm, i, j = m
    return Element._trusted(N, {(k, mm, i, j): c} if c else {})


def sigma_generator_image(p: InvolutionParams, kind: str, i: int, j: Optional[int] = None) -> Element:
    """Image of ``E[i,j]``, ``zE[i,i]``, ``z^-1 E[i,i]``, ``TE[i,i]`` or ``T^-1 E[i,i]``."""
    require_valid(p)
    if not (1 <= i <= p.N) or (j is not None and not 1 <= j <= p.N):
        raise IndexError(f"generator index out of range for N={p.N}")
    return _mono_element(p.N, _generator_mono(p, kind, i, j))


def factorize(key: Key) -> List[Tuple[str, int, Optional[int]]]:
    """Generators whose ordered product is ``z^k T^m E[i,j]``.

    Order: z-generators, then T-generators (all on ``E[i,i]``), then the chain
    of adjacent matrix units from ``i`` to ``j``.
    """
    k, m, i, j = key
    out: List[Tuple[str, int, Optional[int]]] = []
    out += [("z" if k > 0 else "zinv", i, None)] * abs(k)
    out += [("T" if m > 0 else "Tinv", i, None)] * abs(m)
    if i > j:
        out += [("E", a, a - 1) for a in range(i, j, -1)]
    elif i < j:
        out += [("E", a, a + 1) for a in range(i, j)]
    else:
        out.append(("E", i, i))
    return out


@lru_cache(maxsize=1 << 18)
def _oracle_mono(p: InvolutionParams, key: Key) -> Mono:
    acc: Optional[Mono] = None
    for kind, a, b in reversed(factorize(key)):
        g = _generator_mono(p, kind, a, b)
        acc = g if acc is None else _mono_mul(acc, g)
        if acc is None:
            raise AssertionError(f"factorization of {key} produced a vanishing image")
    return acc


def extend_unchecked(p: InvolutionParams, a: Element) -> Element:
    """Anti-multiplicative extension of the generator images, without validation.

    This is the brute-force side of the classification check: for invalid
    parameters the result is a well-defined linear map that fails to be an
    anti-involution.
    """
    out: Dict[Key, FieldElement] = {}
    for key, c in a._terms.items():
        cc, k, m, i, j = _oracle_mono(p, key)
        nk = (k, m, i, j)
        s = out.get(nk)
        v = c * cc
        out[nk] = v if s is None else s + v
    return Element._trusted(a.N, {key: v for key, v in out.items() if v})


def sigma_apply_oracle(p: InvolutionParams, a: Element) -> Element:
    require_valid(p)
    _check_size(p, a)
    return extend_unchecked(p, a)


def _check_size(p: InvolutionParams, a: Element) -> None:
    if a.N != p.N:
        raise ValueError(f"size mismatch: params N={p.N}, element N={a.N}")


# --- scalar anti-involutions and block maps ----------------------------------


def dot_sigma(sign: Scalar, B: Scalar, r: int, x: Element) -> Element:
    """``z^k f(T) -> (sign z)^k q^{k(k-1)r/2} f(B q^{-k} T^{-1}) T^{kr}`` on N = 1 elements."""
    if x.N != 1:
        raise ValueError("dot_sigma acts on scalar (N = 1) elements")
    sign, B = FieldElement.coerce(sign), FieldElement.coerce(B)
    out = {}
    for (k, m, _, _), c in x._terms.items():
        coeff = c * sign**k * B**m * FieldElement.monomial(1, k * (k - 1) * r - 2 * k * m)
        key = (k, k * r - m, 1, 1)
        out[key] = out[key] + coeff if key in out else coeff
    return Element._trusted(1, {k: v for k, v in out.items() if v})


Block = Dict[Tuple[int, int], Element]  # local (row, col) -> scalar element


def split_blocks(a: Element, n: int) -> Dict[str, Block]:
    """Cut ``a`` into M (n x n), B (n x t), C (t x n), D (t x t)."""
    blocks: Dict[str, Dict[Tuple[int, int], Dict[Key, FieldElement]]] = {"M": {}, "B": {}, "C": {}, "D": {}}
    for (k, m, i, j), c in a._terms.items():
        name = ("M" if j <= n else "B") if i <= n else ("C" if j <= n else "D")
        li = i if i <= n else i - n
        lj = j if j <= n else j - n
        blocks[name].setdefault((li, lj), {})[(k, m, 1, 1)] = c
    return {name: {pos: Element._trusted(1, t) for pos, t in b.items()} for name, b in blocks.items()}


def dagger_block(block: Block, rows: int, cols: int) -> Block:
    """Transpose across the anti-diagonal of a ``rows x cols`` block."""
    return {(cols + 1 - j, rows + 1 - i): x for (i, j), x in block.items()}


def transpose_block(block: Block) -> Block:
    return {(j, i): x for (i, j), x in block.items()}


def dagger(a: Element) -> Element:
    """Anti-diagonal transpose of a full N x N element: E[i,j] -> E[N+1-j, N+1-i]."""
    N = a.N
    return Element._trusted(N, {(k, m, N + 1 - j, N + 1 - i): c for (k, m, i, j), c in a._terms.items()})


def _z_shift(x: Element, dk: int) -> Element:
    return Element._trusted(1, {(k + dk, m, 1, 1): c for (k, m, _, _), c in x._terms.items()})


def _assemble(N: int, n: int, blocks: Dict[str, Block]) -> Element:
    out: Dict[Key, FieldElement] = {}
    offs = {"M": (0, 0), "B": (0, n), "C": (n, 0), "D": (n, n)}
    for name, block in blocks.items():
        di, dj = offs[name]
        for (li, lj), x in block.items():
            for (k, m, _, _), c in x._terms.items():
                key = (k, m, li + di, lj + dj)
                out[key] = out[key] + c if key in out else c
    return Element._trusted(N, {k: v for k, v in out.items() if v})


def _block_route(p: InvolutionParams, a: Element, flip) -> Element:
    """Shared body of sigma (flip = dagger_block) and its transpose variant."""
    N, n, t = p.N, p.n, p.t
    a = gamma(p.cvec, a)
    parts = split_blocks(a, n)
    if p.full:
        Mx = flip(parts["M"], n, n)
        return _assemble(N, n, {"M": {pos: dot_sigma(p.A, p.B, p.r, x) for pos, x in Mx.items()}})
    e, Bq, B1 = p.epsilon, p.B, p.B / Q
    M1 = {pos: dot_sigma(e, Bq, 0, x) for pos, x in flip(parts["M"], n, n).items()}
    B2 = {pos: _z_shift(dot_sigma(e, Bq, 0, x), -1) for pos, x in flip(parts["B"], n, t).items()}
    C3 = {pos: _z_shift(dot_sigma(e, B1, 0, x), 1) for pos, x in flip(parts["C"], t, n).items()}
    D4 = {pos: dot_sigma(e, B1, 0, x) for pos, x in flip(parts["D"], t, t).items()}
    # B and C trade places
    return _assemble(N, n, {"M": M1, "B": C3, "C": B2, "D": D4})


def _closed_full_mono(p: InvolutionParams, key: Key) -> Mono:
    """Monomial closed form for n = N, including the off-diagonal c-factor."""
    k, m, i, j = key
    N = p.N
    coeff = _cfactor(p, i, j) * p.A**k * p.B**m * FieldElement.monomial(1, k * (k - 1) * p.r - 2 * k * m)
    return (coeff, k, k * p.r - m, N + 1 - j, N + 1 - i)


@lru_cache(maxsize=1 << 18)
def _sigma_mono(p: InvolutionParams, key: Key) -> Mono:
    if p.full:
        return _closed_full_mono(p, key)
    img = _block_route(p, Element._trusted(p.N, {key: ONE}), dagger_block)
    ((k, m, i, j), c), = img._terms.items()
    return (c, k, m, i, j)


def sigma_apply(p: InvolutionParams, a: Element) -> Element:
    """Apply the anti-involution via its closed form."""
    require_valid(p)
    _check_size(p, a)
    out: Dict[Key, FieldElement] = {}
    for key, c in a._terms.items():
        cc, k, m, i, j = _sigma_mono(p, key)
        nk = (k, m, i, j)
        v = c * cc
        out[nk] = out[nk] + v if nk in out else v
    return Element._trusted(a.N, {key: v for key, v in out.items() if v})


def sigma_apply_blocks(p: InvolutionParams, a: Element) -> Element:
    """Closed form evaluated block-wise on the whole element (no per-monomial cache)."""
    require_valid(p)
    _check_size(p, a)
    return _block_route(p, a, dagger_block)


def sigma_transpose_variant(p: InvolutionParams, a: Element) -> Element:
    """The same block recipes with the ordinary transpose in place of the anti-diagonal one."""
    require_valid(p)
    _check_size(p, a)
    return _block_route(p, a, lambda b, rows, cols: transpose_block(b))


# --- automorphisms ------------------------------------------------------------


def theta(s: Scalar, a: Element) -> Element:
    """``T -> q^s T`` with z and matrix units fixed; s must be a half-integer."""
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise ValueError(f"theta_s needs a half-integer s so that q^s lies in Q(v); got {s}")
    two_s = int(2 * s)
    return Element._trusted(
        a.N, {key: c * FieldElement.monomial(1, two_s * key[1]) for key, c in a._terms.items()}
    )


def gamma(alpha: Sequence[FieldElement], a: Element) -> Element:
    """Diagonal rescaling ``E[i,j] -> alpha_ij E[i,j]`` (i > j), ``alpha_ji^-1 E[i,j]`` (i < j).

    ``alpha`` is given by its subdiagonal, like ``cvec``.
    """
    if all(x == ONE for x in alpha):
        return a
    if len(alpha) != a.N - 1 or any(x.is_zero() for x in alpha):
        raise ValueError("gamma needs N-1 nonzero subdiagonal entries")
    # alpha_ij = d_i / d_j with d_{i+1} = alpha_i d_i
    d = [ONE]
    for x in alpha:
        d.append(d[-1] * x)
    return Element._trusted(
        a.N, {key: c * d[key[2] - 1] / d[key[3] - 1] for key, c in a._terms.items()}
    )


def ad_J(a: Element, n: Optional[int] = None) -> Element:
    """Conjugation by ``J = diag(J_n, J_t)``; ``n = N`` (default) is the full anti-diagonal matrix."""
    N = a.N
    n = N if n is None else n
    return Element._trusted(
        N, {(k, m, pi_n(n, N, i), pi_n(n, N, j)): c for (k, m, i, j), c in a._terms.items()}
    )


def apply_automorphism(kind: str, a: Element, arg=None) -> Element:
    """Dispatch for ``theta`` (arg = s), ``gamma`` (arg = alpha subdiagonal) and ``ad_J`` (arg = n)."""
    if kind == "theta":
        return theta(arg, a)
    if kind == "gamma":
        return gamma(tuple(FieldElement.coerce(x) for x in arg), a)
    if kind == "ad_J":
        return ad_J(a, arg)
    raise ValueError(f"unknown automorphism {kind!r}")


# --- parameter enumeration ----------------------------------------------------


def valid_sign_patterns(N: int, n: int, epsilon: int) -> List[Tuple[int, ...]]:
    """All c in {+-1}^(N-1) accepted by validate_params for (N, n, epsilon, B=q)."""
    out = []
    for signs in product((1, -1), repeat=N - 1):
        p = InvolutionParams.make(N, n, epsilon=epsilon, c=signs)
        if _is_valid(p):
            out.append(signs)
    return out


def random_admissible_cvec(
    N: int, n: int, rng: random.Random, total_sign: int = 1, pool: Sequence[FieldElement] | None = None
) -> Tuple[FieldElement, ...]:
    """Random c satisfying the pairing constraints with fixed-point product ``total_sign``.

    Free entries are drawn from ``pool`` (nonzero scalars); paired partners are
    the inverses; fixed points are signs.  For n = N the fixed-point sign is
    drawn freely and ``total_sign`` is ignored.
    """
    pool = list(pool) if pool else [FieldElement.monomial(s, e) for s in (1, -1, 2) for e in (-2, -1, 0, 1, 3)]
    c: Dict[int, FieldElement] = {}
    t = N - n
    for lo, size in ((0, n), (n, t)):
        for i in range(1, size):
            a, b = lo + i, lo + size - i
            if a < b:
                c[a] = rng.choice(pool)
                c[b] = c[a].inverse()
    if n < N:
        c[n] = rng.choice(pool)
    pts = _fixed_points(N, n)
    if n == N:
        for pt in pts:
            c[pt] = rng.choice((ONE, MINUS_ONE))
    else:
        signs = [rng.choice((ONE, MINUS_ONE)) for _ in pts]
        if pts:
            prod = ONE
            for s in signs[:-1]:
                prod = prod * s
            signs[-1] = prod * FieldElement.coerce(total_sign)
        elif total_sign != 1:
            raise ValueError(f"no fixed point available to carry sign {total_sign} for N={N}, n={n}")
        for pt, s in zip(pts, signs):
            c[pt] = s
    return tuple(c[i] for i in range(1, N))
