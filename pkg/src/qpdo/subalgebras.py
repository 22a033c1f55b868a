"""Lie subalgebras fixed by minus an anti-involution.

Everything is windowed: a :class:`FixedSubalgebraSpec` fixes ranges for the
z- and T-exponents, and every basis or span statement is made inside that box.

The explicit generator families use the rescaled shift operators

    w = q^{(k-1)/2} T   (block M, the n = N algebra, and blocks B/C)
    u = q^{k/2} T       (block D)

for which the scalar anti-involution acts as ``f(w) -> f(w^-1)``.  A family
member pairs a monomial ``y`` with its image, so it is ``y - sigma(y)`` up to a
unit.  The partner coefficient is ``s = eps^k * c_factor``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Element, Key, bracket, weight
from .involutions import (
    InvolutionParams,
    _cfactor,
    require_valid,
    sigma_apply,
)
from .scalar import ONE, Q, FieldElement

__all__ = [
    "FixedSubalgebraSpec",
    "GeneratorFamily",
    "ClosureReport",
    "fixed_project",
    "is_fixed",
    "family_tags",
    "all_families",
    "generator_family",
    "all_generators",
    "generators_by_weight",
    "graded_basis",
    "weight_range",
    "closure_check",
    "dim_table",
    "row_reduce",
    "span_equal",
]


@dataclass(frozen=True)
class FixedSubalgebraSpec:
    params: InvolutionParams
    zmin: int = -2
    zmax: int = 2
    tmin: int = -3
    tmax: int = 3

    def __post_init__(self):
        if self.zmin > self.zmax or self.tmin > self.tmax:
            raise ValueError(f"empty cutoff window k in [{self.zmin},{self.zmax}], m in [{self.tmin},{self.tmax}]")
        require_valid(self.params)

    def in_window(self, key: Key) -> bool:
        k, m, _, _ = key
        return self.zmin <= k <= self.zmax and self.tmin <= m <= self.tmax

    def monomials(self, w: Optional[int] = None) -> List[Key]:
        N = self.params.N
        out = []
        for k in range(self.zmin, self.zmax + 1):
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    if w is not None and k * N + i - j != w:
                        continue
                    out += [(k, m, i, j) for m in range(self.tmin, self.tmax + 1)]
        return out


@dataclass(frozen=True)
class GeneratorFamily:
    """One displayed family: ``tag`` plus its index data.

    Tags: ``M-offdiag``, ``M-antidiag``, ``B/C``, ``D-offdiag``, ``D-antidiag``
    when n < N, and ``full-offdiag``, ``full-antidiag`` when n = N.  ``j`` is
    unused by the antidiagonal tags.  For ``D-*`` the indices are relative to
    the second block (1..N-n).
    """

    tag: str
    i: int
    j: int = 0


# --- fixed space --------------------------------------------------------------


def fixed_project(p: InvolutionParams, a: Element) -> Element:
    """``a - sigma(a)``, which is always fixed by minus sigma."""
    return a - sigma_apply(p, a)


def is_fixed(p: InvolutionParams, a: Element) -> bool:
    return sigma_apply(p, a) == -a


# --- explicit generator families ---------------------------------------------


def family_tags(p: InvolutionParams) -> Tuple[str, ...]:
    if p.full:
        return ("full-offdiag", "full-antidiag")
    return ("M-offdiag", "M-antidiag", "B/C", "D-offdiag", "D-antidiag")


def all_families(p: InvolutionParams) -> List[GeneratorFamily]:
    n, t = p.n, p.t
    out: List[GeneratorFamily] = []
    for tag in family_tags(p):
        size = t if tag.startswith("D") else n
        if tag.endswith("offdiag"):
            out += [GeneratorFamily(tag, i, j) for i, j in combinations(range(1, size + 1), 2)]
        elif tag.endswith("antidiag"):
            out += [GeneratorFamily(tag, i) for i in range(1, size + 1)]
        else:
            out += [GeneratorFamily(tag, i, j) for i in range(1, n + 1) for j in range(1, t + 1)]
    return out


def _require_normalized(p: InvolutionParams) -> None:
    if p.B != Q or p.epsilon not in (ONE, -ONE):
        raise ValueError("generator families are written for B = q and sign +-1; conjugate by theta first")


def _positions(p: InvolutionParams, fam: GeneratorFamily):
    """(row, col) of the leading term, (row, col) of the partner, z-shift of the partner, shift kind."""
    N, n, t = p.N, p.n, p.t
    i, j = fam.i, fam.j
    tag = fam.tag
    if tag not in family_tags(p):
        raise ValueError(f"family {tag!r} does not exist for N={N}, n={n}")
    size = t if tag.startswith("D") else n
    if tag.endswith("offdiag") and not (1 <= i < j <= size):
        raise ValueError(f"{tag} needs 1 <= i < j <= {size}; got i={i}, j={j}")
    if tag.endswith("antidiag") and not (1 <= i <= size):
        raise ValueError(f"{tag} needs 1 <= i <= {size}; got i={i}")
    if tag == "B/C" and not (1 <= i <= n and 1 <= j <= t):
        raise ValueError(f"B/C needs 1 <= i <= {n} and 1 <= j <= {t}; got i={i}, j={j}")
    if tag in ("M-offdiag", "full-offdiag"):
        return (i, n + 1 - j), (j, n + 1 - i), 0, "w"
    if tag in ("M-antidiag", "full-antidiag"):
        return (i, n + 1 - i), (i, n + 1 - i), 0, "w"
    if tag == "B/C":
        return (i, n + j), (N + 1 - j, n + 1 - i), -1, "w"
    if tag == "D-offdiag":
        return (n + i, N + 1 - j), (n + j, N + 1 - i), 0, "u"
    return (n + i, N + 1 - i), (n + i, N + 1 - i), 0, "u"


def _shift_power(kind: str, k: int, e: int) -> Tuple[FieldElement, int]:
    """``w^e`` or ``u^e`` at z-degree k, as (coefficient, T-exponent)."""
    half_q = (k - 1) if kind == "w" else k  # exponent of v in the rescaling
    return FieldElement.monomial(1, half_q * e), e


def generator_family(spec: FixedSubalgebraSpec, fam: GeneratorFamily) -> List[Element]:
    """All members of one family whose support lies in the window.

    The family is ``z^k (w^e E[a,b] - s w^(kr-e) E[a',b'])`` (the partner
    carries an extra ``z^-1`` for B/C), where ``e`` runs over integers.  For the
    antidiagonal tags the two positions coincide and ``e`` runs over
    ``e >= kr - e``, which is the parity basis ``w^d - s w^-d`` shifted by
    ``w^(kr/2)``.
    """
    p = spec.params
    _require_normalized(p)
    (a, b), (a2, b2), dz, kind = _positions(p, fam)
    anti = fam.tag.endswith("antidiag")
    N, r = p.N, p.r
    out = []
    for k in range(spec.zmin, spec.zmax + 1):
        if not (spec.zmin <= k + dz <= spec.zmax):
            continue
        s = p.epsilon**k * _cfactor(p, a, b)
        for e in range(spec.tmin, spec.tmax + 1):
            e2 = k * r - e
            if not (spec.tmin <= e2 <= spec.tmax):
                continue
            if anti and e < e2:
                continue
            c1, m1 = _shift_power(kind, k, e)
            c2, m2 = _shift_power(kind, k, e2)
            terms: Dict[Key, FieldElement] = {(k, m1, a, b): c1}
            key2 = (k + dz, m2, a2, b2)
            terms[key2] = terms.get(key2, 0) - s * c2
            x = Element(N, terms)
            if not x.is_zero():
                out.append(x)
    return out


def all_generators(spec: FixedSubalgebraSpec) -> List[Element]:
    out = []
    for fam in all_families(spec.params):
        out += generator_family(spec, fam)
    return out


def generators_by_weight(spec: FixedSubalgebraSpec) -> Dict[int, List[Element]]:
    """Family members grouped by weight (each member is homogeneous)."""
    out: Dict[int, List[Element]] = {}
    for x in all_generators(spec):
        (w,) = {weight(x.N, key) for key in x.keys()}
        out.setdefault(w, []).append(x)
    return out


# --- exact linear algebra ------------------------------------------------------

Row = Dict[Key, FieldElement]


def row_reduce(rows: Iterable[Row]) -> List[Row]:
    """Reduced row-echelon form over Q(v).

    The pivot of a row is its largest key in (k, m, i, j) order; pivots are
    normalized to 1 and cleared from every other row.  Output is sorted by
    pivot, ascending.
    """
    basis: Dict[Key, Row] = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        for piv, brow in basis.items():
            c = row.get(piv)
            if c:
                for key, val in brow.items():
                    nv = row.get(key, 0) - c * val
                    if nv:
                        row[key] = nv
                    else:
                        row.pop(key, None)
        if not row:
            continue
        piv = max(row)
        inv = row[piv].inverse()
        row = {key: val * inv for key, val in row.items()}
        for bpiv, brow in list(basis.items()):
            c = brow.get(piv)
            if c:
                for key, val in row.items():
                    nv = brow.get(key, 0) - c * val
                    if nv:
                        brow[key] = nv
                    else:
                        brow.pop(key, None)
        basis[piv] = row
    return [basis[piv] for piv in sorted(basis)]


def span_equal(xs: Sequence[Element], ys: Sequence[Element]) -> bool:
    rx = row_reduce(x.terms for x in xs)
    ry = row_reduce(y.terms for y in ys)
    return rx == ry


def weight_range(spec: FixedSubalgebraSpec) -> range:
    N = spec.params.N
    return range(spec.zmin * N - (N - 1), spec.zmax * N + N)


def graded_basis(spec: FixedSubalgebraSpec, w: int) -> List[Element]:
    """Basis of the weight-w fixed elements whose support lies in the window.

    Spanned by ``y - sigma(y)`` over window monomials y whose image is also in
    the window; reduced to row-echelon form, so the output is deterministic.
    """
    p = spec.params
    rows = []
    for key in spec.monomials(w):
        y = Element._trusted(p.N, {key: ONE})
        img = sigma_apply(p, y)
        if all(spec.in_window(kk) for kk in img.keys()):
            x = y - img
            if x:
                rows.append(x._terms)
    return [Element._trusted(p.N, r) for r in row_reduce(rows)]


def dim_table(spec: FixedSubalgebraSpec, wrange: Optional[Iterable[int]] = None) -> Dict[int, int]:
    wr = weight_range(spec) if wrange is None else wrange
    return {w: len(graded_basis(spec, w)) for w in wr}


@dataclass
class ClosureReport:
    checked: int = 0
    failures: List[Tuple[Element, Element]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def closure_check(spec: FixedSubalgebraSpec, samples: int = 200, seed: int = 0) -> ClosureReport:
    """Bracket randomly chosen pairs of basis elements and test the result is fixed."""
    p = spec.params
    pool: List[Element] = []
    for w in weight_range(spec):
        pool += graded_basis(spec, w)
    rep = ClosureReport()
    if not pool:
        return rep
    rng = random.Random(seed)
    for _ in range(samples):
        x, y = rng.choice(pool), rng.choice(pool)
        rep.checked += 1
        if not is_fixed(p, bracket(x, y)):
            rep.failures.append((x, y))
    return rep
