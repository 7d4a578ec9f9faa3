"""Curves y^2 = x^3 + a2 x^2 + a4 x + a6 over F_q (p odd).

Every curve in this package has a1 = a3 = 0, so the admissible changes of
variables are (x, y) -> (alpha^2 x + r, alpha^3 y).  Substituting into a
source curve yields the target coefficients

    a2' = (a2 + 3r) / alpha^2
    a4' = (3r^2 + 2 a2 r + a4) / alpha^4
    a6' = (r^3 + a2 r^2 + a4 r + a6) / alpha^6
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import FieldElem, FieldError, FieldSpec, chi2, enumerate_field, nth_roots

BRUTE_FORCE_MAX_Q = 512


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class CubicCurve:
    a2: FieldElem
    a4: FieldElem
    a6: FieldElem

    def __post_init__(self):
        F = self.a2.F
        if self.a4.F != F or self.a6.F != F:
            raise FieldError("curve coefficients from different fields")

    @property
    def F(self) -> FieldSpec:
        return self.a2.F

    @property
    def coeffs(self) -> tuple[FieldElem, FieldElem, FieldElem]:
        return (self.a2, self.a4, self.a6)

    @property
    def singular(self) -> bool:
        return discriminant(self) == 0

    def rhs(self, x: FieldElem) -> FieldElem:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    @classmethod
    def from_ints(cls, F: FieldSpec, a2: int, a4: int, a6: int) -> CubicCurve:
        return cls(F(a2), F(a4), F(a6))


@dataclass(frozen=True)
class ShortW:
    """y^2 = x^3 + a x + b."""

    a: FieldElem
    b: FieldElem

    def as_cubic(self) -> CubicCurve:
        return CubicCurve(self.a.F.zero, self.a, self.b)


@dataclass(frozen=True)
class IsoWitness:
    """The map (x, y) -> (alpha^2 x + r, alpha^3 y)."""

    alpha: FieldElem
    r: FieldElem


def apply_witness(c: CubicCurve, w: IsoWitness) -> CubicCurve:
    """Coefficients of the curve obtained by substituting w into c."""
    a2, a4, a6 = c.coeffs
    r = w.r
    al2 = w.alpha * w.alpha
    al4 = al2 * al2
    return CubicCurve(
        (a2 + 3 * r) / al2,
        (3 * r * r + 2 * a2 * r + a4) / al4,
        c.rhs(r) / (al4 * al2),
    )


def _b_invariants(c: CubicCurve):
    a2, a4, a6 = c.coeffs
    b2 = 4 * a2
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    return b2, b4, b6, b8


def discriminant(c: CubicCurve) -> FieldElem:
    b2, b4, b6, b8 = _b_invariants(c)
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def j_invariant(c: CubicCurve) -> FieldElem:
    disc = discriminant(c)
    if disc == 0:
        raise SingularCurveError(f"singular curve {c}")
    b2, b4, _, _ = _b_invariants(c)
    c4 = b2 * b2 - 24 * b4
    return c4 * c4 * c4 / disc


def to_short(c: CubicCurve) -> ShortW:
    """Complete the cube: x -> x - a2/3."""
    if c.F.p == 3:
        raise FieldError("short Weierstrass form needs characteristic >= 5")
    a2, a4, a6 = c.coeffs
    third = c.F.from_ratio(1, 3)
    a = a4 - a2 * a2 * third
    b = a6 - a2 * a4 * third + 2 * a2 * a2 * a2 * c.F.from_ratio(1, 27)
    return ShortW(a, b)


def isomorphic_fqbar(c1: CubicCurve, c2: CubicCurve) -> bool:
    return j_invariant(c1) == j_invariant(c2)


def isomorphic_fq(c1: CubicCurve, c2: CubicCurve) -> IsoWitness | None:
    """Decide F_q-isomorphism and return a witness mapping c1 onto c2.

    For p >= 5 both curves are reduced to short form and compared through
    the scalings a = mu^2 a', b = mu^3 b' with mu = alpha^2.  For p = 3 the
    a2 coefficient pins alpha^2, which in turn forces r.
    """
    F = c1.F
    if c2.F != F:
        raise FieldError("curves over different fields")
    if c1.singular or c2.singular:
        raise SingularCurveError("isomorphism test needs nonsingular curves")

    if F.p == 3:
        w = _isomorphic_char3(c1, c2)
    else:
        w = _isomorphic_short(c1, c2)
    if w is not None:
        assert apply_witness(c1, w) == c2, "witness failed re-substitution"
    return w


def _isomorphic_short(c1: CubicCurve, c2: CubicCurve) -> IsoWitness | None:
    if j_invariant(c1) != j_invariant(c2):
        return None
    s1, s2 = to_short(c1), to_short(c2)
    if s1.a == 0:
        roots = nth_roots(s1.b / s2.b, 6)
        if not roots:
            return None
        alpha = roots[0]
    elif s1.b == 0:
        roots = nth_roots(s1.a / s2.a, 4)
        if not roots:
            return None
        alpha = roots[0]
    else:
        mu = (s1.b / s2.b) / (s1.a / s2.a)
        if mu * mu != s1.a / s2.a or chi2(mu) != 1:
            return None
        alpha = nth_roots(mu, 2)[0]
    r = (alpha * alpha * c2.a2 - c1.a2) / 3
    return IsoWitness(alpha, r)


def _isomorphic_char3(c1: CubicCurve, c2: CubicCurve) -> IsoWitness | None:
    if c1.a2 == 0 or c2.a2 == 0:
        raise FieldError("characteristic-3 test needs a2 != 0 on both curves")
    lam = c1.a2 / c2.a2
    if chi2(lam) != 1:
        return None
    r = -(c2.a4 * lam * lam - c1.a4) / c1.a2
    if c2.a6 * lam * lam * lam != c1.rhs(r):
        return None
    return IsoWitness(nth_roots(lam, 2)[0], r)


def brute_force_iso(c1: CubicCurve, c2: CubicCurve) -> IsoWitness | None:
    """First (alpha, r) in enumeration order (alpha outer) mapping c1 to c2."""
    F = c1.F
    if c2.F != F:
        raise FieldError("curves over different fields")
    if F.q > BRUTE_FORCE_MAX_Q:
        raise FieldError(f"brute-force search limited to q <= {BRUTE_FORCE_MAX_Q}")
    els = enumerate_field(F)
    a2, a4, a6 = c1.coeffs
    # precompute the r-dependent numerators once
    shifted = [
        (r, a2 + 3 * r, 3 * r * r + 2 * a2 * r + a4, c1.rhs(r)) for r in els
    ]
    for alpha in els[1:]:
        al2 = alpha * alpha
        al4 = al2 * al2
        al6 = al4 * al2
        t2, t4, t6 = c2.a2 * al2, c2.a4 * al4, c2.a6 * al6
        for r, s2, s4, s6 in shifted:
            if s2 == t2 and s4 == t4 and s6 == t6:
                return IsoWitness(alpha, r)
    return None


def iso_witness_counts(curves: list[CubicCurve]) -> dict[tuple[int, int], int]:
    """Exhaustive (alpha, r) enumeration over a whole list of curves.

    Returns {(i, j): number of (alpha, r) in F_q* x F_q carrying curves[i]
    onto curves[j]}; pairs with no witness are omitted.  This is the
    all-pairs counterpart of brute_force_iso and shares nothing with the
    structured test beyond field arithmetic.
    """
    if not curves:
        return {}
    F = curves[0].F
    q, m = F.q, F.q - 1
    exp = np.asarray(F.exp_table, dtype=np.int64)
    logt = np.asarray(F.log_table, dtype=np.int64)
    e = np.arange(m, dtype=np.int64)

    keys = np.array(
        [(c.a2.v * q + c.a4.v) * q + c.a6.v for c in curves], dtype=np.int64
    )
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]

    els = enumerate_field(F)
    counts: dict[tuple[int, int], int] = {}
    for i, c in enumerate(curves):
        a2, a4, a6 = c.coeffs
        s = np.array(
            [
                ((a2 + 3 * r).v, (3 * r * r + 2 * a2 * r + a4).v, c.rhs(r).v)
                for r in els
            ],
            dtype=np.int64,
        )
        # coefficient of degree d is scaled by alpha^(-d) with alpha = g^e
        parts = []
        for col, d in ((0, 2), (1, 4), (2, 6)):
            num = s[:, col][:, None]
            scaled = exp[(logt[np.maximum(num, 1)] - d * e[None, :]) % m]
            parts.append(np.where(num == 0, 0, scaled))
        image = (parts[0] * q + parts[1]) * q + parts[2]
        pos = np.searchsorted(sorted_keys, image.ravel())
        pos = np.minimum(pos, len(sorted_keys) - 1)
        hit = sorted_keys[pos] == image.ravel()
        targets, n = np.unique(order[pos[hit]], return_counts=True)
        for j, cnt in zip(targets.tolist(), n.tolist()):
            counts[(i, j)] = cnt
    return counts


def split_blocks(members: list[FieldElem], curve_of) -> list[list[FieldElem]]:
    """Partition members into F_q-isomorphism blocks, first member as block key."""
    blocks: list[list[FieldElem]] = []
    curves = {}
    for u in members:
        cu = curves.setdefault(u.v, curve_of(u))
        for blk in blocks:
            if isomorphic_fq(curves[blk[0].v], cu) is not None:
                blk.append(u)
                break
        else:
            blocks.append([u])
    return blocks


def point_count(c: CubicCurve) -> int:
    """Projective count: the point at infinity plus 1 + chi2(f(x)) per x."""
    return 1 + sum(1 + chi2(c.rhs(x)) for x in enumerate_field(c.F))


def affine_point_count(c: CubicCurve) -> int:
    return point_count(c) - 1


def hasse_ok(n: int, q: int) -> bool:
    """|n - (q+1)| <= 2 sqrt(q), in exact integers."""
    d = abs(n - (q + 1))
    return d * d <= 4 * q


def quadratic_twist(c: CubicCurve, d: FieldElem) -> CubicCurve:
    if chi2(d) != -1:
        raise ValueError("twisting element must be a non-square")
    return CubicCurve(d * c.a2, d * d * c.a4, d * d * d * c.a6)


def sqrt_bound(q: int) -> int:
    return math.isqrt(4 * q)
