"""Windowed checks of the anti-involution laws, parameter grids and identity suites.

The checks work on single monomials, where every map involved sends a
monomial to a scalar multiple of a monomial, so a failure list is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from .algebra import Element, Key, homogeneous_weight, weight
from .involutions import (
    InvolutionParams,
    Mono,
    _is_valid,
    _mono_mul,
    _oracle_mono,
    _sigma_mono,
    ad_J,
    gamma,
    random_admissible_cvec,
    sigma_apply,
    sigma_apply_oracle,
    sigma_transpose_variant,
    theta,
    valid_sign_patterns,
)
from .scalar import ONE, Q, V, FieldElement

__all__ = [
    "monomial_window",
    "InvolutionCheck",
    "check_involution",
    "extension_is_anti_involution",
    "IffRow",
    "iff_table",
    "law_grid",
    "normalized_grid",
    "oracle_mismatches",
    "theta_mismatches",
    "gamma_mismatches",
    "transpose_mismatches",
    "transpose_gradation_witness",
    "theta_conjugate_params",
    "random_admissible_alphas",
]


def monomial_window(N: int, kmax: int, mmax: int) -> List[Key]:
    return [
        (k, m, i, j)
        for k in range(-kmax, kmax + 1)
        for m in range(-mmax, mmax + 1)
        for i in range(1, N + 1)
        for j in range(1, N + 1)
    ]


@dataclass
class InvolutionCheck:
    checked_monomials: int = 0
    checked_pairs: int = 0
    involutive: List[Key] = field(default_factory=list)
    anti_multiplicative: List[Tuple[Key, Key]] = field(default_factory=list)
    graded: List[Key] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.involutive or self.anti_multiplicative or self.graded)

    def summary(self) -> str:
        return (
            f"{self.checked_monomials} monomials, {self.checked_pairs} pairs; failures: "
            f"involutive {len(self.involutive)}, anti-multiplicative {len(self.anti_multiplicative)}, "
            f"graded {len(self.graded)}"
        )


def _key(m: Mono) -> Key:
    return m[1:]


def _check_mono_map(N: int, image: Callable[[Key], Mono], kmax: int, mmax: int, stop_early: bool) -> InvolutionCheck:
    rep = InvolutionCheck()
    keys = monomial_window(N, kmax, mmax)
    imgs = {key: image(key) for key in keys}
    rep.checked_monomials = len(keys)
    for key, (c, *k2) in imgs.items():
        k2 = tuple(k2)
        if weight(N, k2) != weight(N, key):
            rep.graded.append(key)
        c2, *k3 = image(k2)
        if tuple(k3) != key or c * c2 != ONE:
            rep.involutive.append(key)
        if stop_early and not rep.ok:
            return rep
    for a in keys:
        sa = imgs[a]
        for b in keys:
            rep.checked_pairs += 1
            sb = imgs[b]
            if a[3] != b[2]:
                # ab = 0, so sigma(b) sigma(a) must vanish as well
                if sb[4] == sa[3]:
                    rep.anti_multiplicative.append((a, b))
                continue
            ab = _mono_mul((ONE,) + a, (ONE,) + b)
            lhs = image(_key(ab))
            rhs = _mono_mul(sb, sa)
            if rhs is None or _key(lhs) != _key(rhs) or ab[0] * lhs[0] != rhs[0]:
                rep.anti_multiplicative.append((a, b))
                if stop_early:
                    return rep
    return rep


def check_involution(p: InvolutionParams, kmax: int = 2, mmax: int = 2, use_oracle: bool = False) -> InvolutionCheck:
    """sigma^2 = id, sigma(ab) = sigma(b) sigma(a) and weight preservation on the window."""
    sigma_apply(p, Element.zero(p.N))  # validates
    fn = _oracle_mono if use_oracle else _sigma_mono
    return _check_mono_map(p.N, lambda key: fn(p, key), kmax, mmax, stop_early=False)


def extension_is_anti_involution(p: InvolutionParams, kmax: int = 1, mmax: int = 1) -> bool:
    """Whether the generator images extend to an anti-involution (tested on a window).

    No validation: this is the brute-force side of the classification.
    """
    return _check_mono_map(p.N, lambda key: _oracle_mono(p, key), kmax, mmax, stop_early=True).ok


@dataclass(frozen=True)
class IffRow:
    params: InvolutionParams
    validated: bool
    extends: bool

    @property
    def agrees(self) -> bool:
        return self.validated == self.extends


def iff_table(N: int, n: int, random_samples: int = 20, seed: int = 0) -> List[IffRow]:
    """Validation against brute force, for every sign vector and some non-sign vectors, both cases."""
    rng = random.Random(seed)
    pool = [ONE, -ONE, Q, -Q]
    vectors = [tuple(FieldElement.coerce(x) for x in signs) for signs in _signs(N - 1)]
    vectors += [tuple(rng.choice(pool) for _ in range(N - 1)) for _ in range(random_samples)]
    rows = []
    for eps in (ONE, -ONE):
        for c in vectors:
            p = InvolutionParams(N, n, eps, Q, 0, c)
            rows.append(IffRow(p, _is_valid(p), extension_is_anti_involution(p)))
    return rows


def _signs(length: int):
    from itertools import product

    return product((1, -1), repeat=length)


# --- parameter grids ------------------------------------------------------------


def law_grid(Ns: Sequence[int] = (1, 2, 3, 4)) -> Iterator[InvolutionParams]:
    """Valid parameters: every n, both signs, all sign patterns; for n = N also
    r in -2..2 and B in {q, q^2, vq} with A = +-(q/B)^(r/2) whenever that lies in Q(v)."""
    for N in Ns:
        for n in range(1, N + 1):
            for eps in (1, -1):
                if n < N:
                    for c in valid_sign_patterns(N, n, eps):
                        yield InvolutionParams.make(N, n, epsilon=eps, c=c)
                    continue
                for c in valid_sign_patterns(N, n, 1):
                    for r in range(-2, 3):
                        for b_exp in (2, 4, 3):  # B = v^b_exp
                            # A^2 = (q/B)^r = v^{(2 - b_exp) r}
                            a2 = (2 - b_exp) * r
                            if a2 % 2:
                                continue
                            A = FieldElement.monomial(eps, a2 // 2)
                            yield InvolutionParams.make(N, n, A=A, B=FieldElement.monomial(1, b_exp), r=r, c=c)


def normalized_grid(Ns: Sequence[int] = (1, 2, 3, 4), rs: Sequence[int] = (-2, -1, 0, 1, 2)) -> Iterator[InvolutionParams]:
    """B = q, sign +-1, every sign pattern; r ranges over ``rs`` when n = N."""
    for N in Ns:
        for n in range(1, N + 1):
            for eps in (1, -1):
                pats = valid_sign_patterns(N, n, eps if n < N else 1)
                for c in pats:
                    for r in (rs if n == N else (0,)):
                        yield InvolutionParams.make(N, n, epsilon=eps, c=c, r=r)


# --- identity suites ---------------------------------------------------------------


def _mono_el(N: int, key: Key) -> Element:
    return Element._trusted(N, {key: ONE})


def oracle_mismatches(p: InvolutionParams, keys: Sequence[Key]) -> List[Key]:
    return [k for k in keys if sigma_apply(p, _mono_el(p.N, k)) != sigma_apply_oracle(p, _mono_el(p.N, k))]


def theta_conjugate_params(p: InvolutionParams, s) -> InvolutionParams:
    """Parameters of ``theta_s sigma_p theta_-s``: A -> q^(s r) A, B -> q^(-2s) B."""
    two_s = Fraction(s) * 2
    return p.with_(
        epsilon=p.epsilon * FieldElement.monomial(1, int(two_s * p.r)),
        B=p.B * FieldElement.monomial(1, int(-2 * two_s)),
    )


def theta_mismatches(p: InvolutionParams, s, keys: Sequence[Key]) -> List[Key]:
    p2 = theta_conjugate_params(p, s)
    bad = []
    for k in keys:
        x = _mono_el(p.N, k)
        if theta(s, sigma_apply(p, theta(-Fraction(s), x))) != sigma_apply(p2, x):
            bad.append(k)
    return bad


def gamma_mismatches(p: InvolutionParams, alpha: Sequence[FieldElement], keys: Sequence[Key]) -> List[Key]:
    """Keys where ``sigma_c Gamma_alpha``, ``sigma_(c alpha)`` and ``Gamma_(alpha^-1) sigma_c`` disagree."""
    alpha = tuple(alpha)
    pc = p.with_(cvec=tuple(c * a for c, a in zip(p.cvec, alpha)))
    inv = tuple(a.inverse() for a in alpha)
    bad = []
    for k in keys:
        x = _mono_el(p.N, k)
        mid = sigma_apply(pc, x)
        if sigma_apply(p, gamma(alpha, x)) != mid or gamma(inv, sigma_apply(p, x)) != mid:
            bad.append(k)
    return bad


def transpose_mismatches(p: InvolutionParams, keys: Sequence[Key]) -> List[Key]:
    """Keys where ``Ad_J sigma^T`` differs from sigma (J block-diagonal for n < N)."""
    return [
        k for k in keys
        if ad_J(sigma_transpose_variant(p, _mono_el(p.N, k)), p.n) != sigma_apply(p, _mono_el(p.N, k))
    ]


def transpose_gradation_witness(p: InvolutionParams, keys: Sequence[Key]) -> Optional[Key]:
    """A monomial whose sigma^T image has a different weight, if one exists in ``keys``."""
    for k in keys:
        img = sigma_transpose_variant(p, _mono_el(p.N, k))
        if homogeneous_weight(img) != weight(p.N, k):
            return k
    return None


def random_admissible_alphas(N: int, n: int, count: int, seed: int = 0) -> List[Tuple[FieldElement, ...]]:
    rng = random.Random(seed)
    return [random_admissible_cvec(N, n, rng) for _ in range(count)]
