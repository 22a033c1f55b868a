"""The natural module ``V = K^N[z, z^-1]`` and residue bilinear forms on it.

An operator monomial acts on a basis vector by

    (z^k T^m E[i,j]) (z^u e_p) = delta(j, p) q^(m u) z^(k+u) e_i,

and a form is ``B(h, g) = Res_z(Phi(h)^T J g)`` with ``Phi(h)(z) = h(sign z)``.
The four variants differ in ``J``:

==========  ===========================================
``nN``      ``z^-2 G`` with G supported on the anti-diagonal
``n<N``     ``diag(z^-2 G_n, z^-1 G_t)``, each anti-diagonal
``T-nN``    ``z^-2 D``, D diagonal
``T-n<N``   ``diag(z^-2 D_n, z^-1 D_t)``
==========  ===========================================

With all ``c_i = 1`` the anti-diagonal G is the exchange matrix.  In general
``G[a, pi(a)] = d_a`` with ``d_1 = 1`` and ``d_(a+1) = c_a d_a``, which is what
makes sigma the adjoint for every admissible ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import Element
from .involutions import InvolutionParams, pi_n, require_valid, sigma_apply, sigma_transpose_variant
from .scalar import ONE, ZERO, FieldElement, Q, Scalar

__all__ = [
    "VectorElement",
    "FormSpec",
    "basis_vector",
    "act",
    "act_shift",
    "residue",
    "form_eval",
    "adjoint_sides",
    "adjoint_check",
    "adjoint_window_check",
    "literal_twist_sides",
    "gram_matrix",
    "block_symmetry_signs",
    "nondegeneracy_partners",
    "VARIANTS",
]

VARIANTS = ("nN", "n<N", "T-nN", "T-n<N")

VKey = Tuple[int, int]  # (u, p)


class VectorElement:
    """Finite sum of ``coeff * z^u e_p``."""

    __slots__ = ("N", "_terms")

    def __init__(self, N: int, terms: Mapping[VKey, Scalar] | None = None):
        self.N = N
        clean = {}
        for (u, p), c in (terms or {}).items():
            if not 1 <= p <= N:
                raise IndexError(f"component e_{p} out of range for N={N}")
            c = FieldElement.coerce(c)
            if c:
                clean[(u, p)] = c
        self._terms = clean

    @classmethod
    def _trusted(cls, N: int, terms: Dict[VKey, FieldElement]) -> "VectorElement":
        obj = object.__new__(cls)
        obj.N, obj._terms = N, terms
        return obj

    @property
    def terms(self) -> Dict[VKey, FieldElement]:
        return dict(self._terms)

    def __eq__(self, other):
        if not isinstance(other, VectorElement):
            return NotImplemented
        return self.N == other.N and self._terms == other._terms

    def __hash__(self):
        return hash((self.N, frozenset(self._terms.items())))

    def __add__(self, other: "VectorElement") -> "VectorElement":
        if other.N != self.N:
            raise ValueError("size mismatch")
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return VectorElement._trusted(self.N, out)

    def scale(self, c: Scalar) -> "VectorElement":
        c = FieldElement.coerce(c)
        if not c:
            return VectorElement._trusted(self.N, {})
        return VectorElement._trusted(self.N, {k: c * x for k, x in self._terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        parts = [f"({c})*z^{u}*e{p}" for (u, p), c in sorted(self._terms.items())]
        return f"VectorElement(N={self.N}, {' + '.join(parts) or '0'})"


def basis_vector(N: int, u: int, p: int) -> VectorElement:
    return VectorElement(N, {(u, p): ONE})


@dataclass(frozen=True)
class FormSpec:
    sign: int
    variant: str
    N: int
    n: int
    cvec: Optional[Tuple[FieldElement, ...]] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("form sign must be +1 or -1")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown form variant {self.variant!r}; expected one of {VARIANTS}")
        if not 1 <= self.n <= self.N:
            raise ValueError("need 1 <= n <= N")
        if self.variant in ("nN", "T-nN") and self.n != self.N:
            raise ValueError(f"variant {self.variant} needs n = N")
        if self.variant in ("n<N", "T-n<N") and self.n == self.N:
            raise ValueError(f"variant {self.variant} needs n < N")
        if self.cvec is not None and len(self.cvec) != self.N - 1:
            raise ValueError("cvec must have N-1 entries")

    @classmethod
    def for_params(cls, p: InvolutionParams, transpose: bool = False) -> "FormSpec":
        """The form matched to ``p``: its sign is the case sign, its G carries ``c``."""
        if p.epsilon not in (ONE, -ONE):
            raise ValueError("forms are defined for sign +-1 (normalize B = q first)")
        variant = ("nN" if p.full else "n<N")
        if transpose:
            variant = "T-" + variant
        return cls(1 if p.epsilon == ONE else -1, variant, p.N, p.n, p.cvec)

    @property
    def transpose(self) -> bool:
        return self.variant.startswith("T-")

    def gram_weights(self) -> List[FieldElement]:
        d = [ONE]
        for c in self.cvec or (ONE,) * (self.N - 1):
            d.append(d[-1] * c)
        return d

    def partner(self, p: int) -> int:
        """The component paired with e_p by the (anti-)diagonal G."""
        return p if self.transpose else pi_n(self.n, self.N, p)


def act(a: Element, h: VectorElement) -> VectorElement:
    if a.N != h.N:
        raise ValueError(f"size mismatch: operator N={a.N}, vector N={h.N}")
    out: Dict[VKey, FieldElement] = {}
    by_p: Dict[int, List[Tuple[int, FieldElement]]] = {}
    for (u, p), c in h._terms.items():
        by_p.setdefault(p, []).append((u, c))
    for (k, m, i, j), c in a._terms.items():
        for u, cu in by_p.get(j, ()):
            val = c * cu * FieldElement.monomial(1, 2 * m * u)
            key = (k + u, i)
            out[key] = out[key] + val if key in out else val
    return VectorElement._trusted(h.N, {k: v for k, v in out.items() if v})


def act_shift(alpha, h: VectorElement) -> VectorElement:
    """``T^alpha`` for half-integer alpha: ``z^u e_p -> q^(alpha u) z^u e_p``."""
    two = Fraction(alpha) * 2
    if two.denominator != 1:
        raise ValueError("T^alpha needs a half-integer alpha")
    two = int(two)
    return VectorElement._trusted(
        h.N, {(u, p): c * FieldElement.monomial(1, two * u) for (u, p), c in h._terms.items()}
    )


def residue(f: Mapping[int, Scalar]) -> FieldElement:
    """Coefficient of ``z^-1`` in a Laurent polynomial given as ``{power: coeff}``."""
    return FieldElement.coerce(f.get(-1, 0))


def _pair(spec: FormSpec, u: int, p: int, s: int, q: int) -> FieldElement:
    if q != spec.partner(p):
        return ZERO
    shift = 1 if (spec.n == spec.N or p <= spec.n) else 0
    if u + s != shift:
        return ZERO
    d = spec.gram_weights()[p - 1]
    return d if (spec.sign == 1 or u % 2 == 0) else -d


def form_eval(spec: FormSpec, h: VectorElement, g: VectorElement) -> FieldElement:
    if h.N != spec.N or g.N != spec.N:
        raise ValueError("vector size does not match the form")
    total = ZERO
    for (u, p), ch in h._terms.items():
        for (s, q), cg in g._terms.items():
            x = _pair(spec, u, p, s, q)
            if x:
                total = total + ch * cg * x
    return total


def _z_components(L: Element) -> Dict[int, Element]:
    parts: Dict[int, Dict] = {}
    for key, c in L._terms.items():
        parts.setdefault(key[0], {})[key] = c
    return {k: Element._trusted(L.N, t) for k, t in parts.items()}


def _check_pair(p: InvolutionParams, spec: FormSpec) -> None:
    require_valid(p)
    if (p.N, p.n) != (spec.N, spec.n):
        raise ValueError("form and involution disagree on (N, n)")


def adjoint_sides(
    p: InvolutionParams, spec: FormSpec, L: Element, h: VectorElement, g: VectorElement
) -> Tuple[FieldElement, FieldElement]:
    """``B(Lh, g)`` and ``B(h, L' g)`` where L' is the adjoint predicted by sigma.

    For n < N, ``L' = sigma(L)``.  For n = N each z-degree component ``L_k`` is
    twisted: ``L'_k = q^(kr/2) T^(-kr/2) sigma(L_k) T^(-kr/2)``.  The transpose
    variants use sigma^T in place of sigma.
    """
    _check_pair(p, spec)
    sig = sigma_transpose_variant if spec.transpose else sigma_apply
    lhs = form_eval(spec, act(L, h), g)
    if not p.full or p.r == 0:
        return lhs, form_eval(spec, h, act(sig(p, L), g))
    rhs = ZERO
    for k, Lk in _z_components(L).items():
        half = Fraction(k * p.r, 2)
        vec = act_shift(-half, act(sig(p, Lk), act_shift(-half, g)))
        rhs = rhs + FieldElement.monomial(1, k * p.r) * form_eval(spec, h, vec)
    return lhs, rhs


def adjoint_check(p: InvolutionParams, spec: FormSpec, L: Element, h: VectorElement, g: VectorElement) -> bool:
    lhs, rhs = adjoint_sides(p, spec, L, h, g)
    return lhs == rhs


def literal_twist_sides(
    p: InvolutionParams, spec: FormSpec, L: Element, h: VectorElement, g: VectorElement
) -> Tuple[FieldElement, FieldElement]:
    """The same comparison with the uncorrected twist ``T^(-kr/2) sigma(L_k) T^(kr/2)``.

    Kept to document that this form of the identity fails once r != 0.
    """
    _check_pair(p, spec)
    lhs = form_eval(spec, act(L, h), g)
    rhs = ZERO
    for k, Lk in _z_components(L).items():
        half = Fraction(k * p.r, 2)
        rhs = rhs + form_eval(spec, h, act_shift(-half, act(sigma_apply(p, Lk), act_shift(half, g))))
    return lhs, rhs


def gram_matrix(spec: FormSpec, basis: Sequence[VectorElement]) -> List[List[FieldElement]]:
    if not basis:
        raise ValueError("gram_matrix needs a nonempty basis")
    return [[form_eval(spec, a, b) for b in basis] for a in basis]


def _window(spec: FormSpec, comps: Iterable[int], U: int) -> List[VectorElement]:
    return [basis_vector(spec.N, u, p) for p in comps for u in range(-U, U + 1)]


def block_symmetry_signs(spec: FormSpec, U: int = 4) -> Dict[str, Optional[int]]:
    """Symmetry sign of the form on each block, by brute force over ``|u| <= U``.

    +1 means symmetric, -1 antisymmetric, None neither (or identically zero).
    Keys are ``"n"`` and, for n < N, ``"t"``.
    """
    blocks = {"n": range(1, spec.n + 1)}
    if spec.n < spec.N:
        blocks["t"] = range(spec.n + 1, spec.N + 1)
    out: Dict[str, Optional[int]] = {}
    for name, comps in blocks.items():
        vecs = _window(spec, comps, U)
        sym = anti = True
        nonzero = False
        for a in vecs:
            for b in vecs:
                x, y = form_eval(spec, a, b), form_eval(spec, b, a)
                nonzero = nonzero or bool(x)
                sym = sym and x == y
                anti = anti and x == -y
        out[name] = None if not nonzero or sym == anti else (1 if sym else -1)
    return out


def nondegeneracy_partners(spec: FormSpec, U: int = 4) -> Dict[VKey, Optional[VKey]]:
    """For each ``z^u e_p`` with ``|u| <= U`` a partner ``z^s e_q``, ``|s| <= U+1``, pairing nonzero."""
    out: Dict[VKey, Optional[VKey]] = {}
    cands = [(s, q) for q in range(1, spec.N + 1) for s in range(-U - 1, U + 2)]
    for p in range(1, spec.N + 1):
        for u in range(-U, U + 1):
            out[(u, p)] = next((c for c in cands if _pair(spec, u, p, *c)), None)
    return out


def _adjoint_image(p: InvolutionParams, spec: FormSpec, L: Element, g: VectorElement) -> VectorElement:
    """``L' g`` with L' the predicted adjoint (see :func:`adjoint_sides`)."""
    sig = sigma_transpose_variant if spec.transpose else sigma_apply
    if not p.full or p.r == 0:
        return act(sig(p, L), g)
    out = VectorElement._trusted(g.N, {})
    for k, Lk in _z_components(L).items():
        half = Fraction(k * p.r, 2)
        vec = act_shift(-half, act(sig(p, Lk), act_shift(-half, g)))
        out = out + vec.scale(FieldElement.monomial(1, k * p.r))
    return out


def _functional_table(spec: FormSpec, pairs, U: int, swap: bool) -> Dict[Tuple[VKey, VKey], FieldElement]:
    """Sparse table of B over (h, g) with |u| <= U, from (fixed basis key, image vector) pairs.

    With ``swap`` False the image is the left argument (B(image, g), g varies);
    with ``swap`` True it is the right argument (B(h, image), h varies).
    """
    table: Dict[Tuple[VKey, VKey], FieldElement] = {}
    for fixed, vec in pairs:
        for (s, q), c in vec._terms.items():
            other_p = spec.partner(q)
            shift = 1 if (spec.n == spec.N or q <= spec.n) else 0
            other_u = shift - s
            if abs(other_u) > U:
                continue
            val = c * (_pair(spec, s, q, other_u, other_p) if not swap else _pair(spec, other_u, other_p, s, q))
            if val:
                key = (fixed, (other_u, other_p)) if not swap else ((other_u, other_p), fixed)
                table[key] = table.get(key, ZERO) + val
    return {k: v for k, v in table.items() if v}


def adjoint_window_check(p: InvolutionParams, spec: FormSpec, L: Element, U: int = 3) -> List[Tuple[VKey, VKey]]:
    """Every basis pair (h, g) with ``|u| <= U`` where adjointness fails.

    Equivalent to calling :func:`adjoint_check` on all such pairs, but it only
    visits the pairings that can be nonzero.
    """
    _check_pair(p, spec)
    keys = [(u, c) for c in range(1, spec.N + 1) for u in range(-U, U + 1)]
    left = _functional_table(spec, [(k, act(L, basis_vector(spec.N, *k))) for k in keys], U, swap=False)
    right = _functional_table(spec, [(k, _adjoint_image(p, spec, L, basis_vector(spec.N, *k))) for k in keys], U, swap=True)
    return sorted(k for k in set(left) | set(right) if left.get(k, ZERO) != right.get(k, ZERO))
