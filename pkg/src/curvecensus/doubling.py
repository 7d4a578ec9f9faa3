"""The doubling family E_u : y^2 = x^3 + u x^2 + 16 u x over F_q, p >= 3."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .curve import CubicCurve, point_count
from .field import (
    FieldElem,
    FieldError,
    FieldSpec,
    chi2,
    enumerate_field,
    field_of_order,
    sqrt_all,
)


class InadmissibleParameter(ValueError):
    pass


def _check_char(F: FieldSpec):
    if F.p < 3:
        raise FieldError("doubling family needs odd characteristic")


def admissible(u: FieldElem) -> bool:
    return u != 0 and u != 64


def admissible_params(F: FieldSpec) -> list[FieldElem]:
    _check_char(F)
    return [u for u in enumerate_field(F) if admissible(u)]


def _require(u: FieldElem):
    _check_char(u.F)
    if not admissible(u):
        raise InadmissibleParameter(f"u = {u} is excluded (u must avoid 0 and 64)")


def d_curve(u: FieldElem) -> CubicCurve:
    _require(u)
    return CubicCurve(u, 16 * u, u.F.zero)


def d_j(u: FieldElem) -> FieldElem:
    _require(u)
    return (u - 48) ** 3 / (u - 64)


def g_u_poly(u: FieldElem) -> tuple[FieldElem, FieldElem, FieldElem]:
    """(A, B, C) with g_u(V) = A V^2 + B V + C."""
    _require(u)
    return (u - 64, u * u - 208 * u + 9216, -64 * u * u + 9216 * u - 331776)


def d_delta(u: FieldElem) -> FieldElem:
    _require(u)
    return u * (u - 64) * (u - 48) ** 2


def g_u_roots(u: FieldElem) -> list[FieldElem]:
    A, B, _ = g_u_poly(u)
    roots = {(-B + s) / (2 * A) for s in sqrt_all(d_delta(u))}
    return sorted(roots, key=lambda x: x.v)


def d_jbar_class(u: FieldElem) -> list[FieldElem]:
    members = {u} | {v for v in g_u_roots(u) if admissible(v)}
    return sorted(members, key=lambda x: x.v)


def c3(q: int) -> int:
    return {0: (q - 3) // 6, 1: (q - 7) // 6, 2: (q - 5) // 6}[q % 3]


def c1(q: int) -> int:
    return q - 2 - 3 * c3(q)


def d_count_jbar_formula(q: int) -> int:
    return {0: (2 * q - 3) // 3, 1: (2 * q + 1) // 3, 2: (2 * q - 1) // 3}[q % 3]


class AlphaSolution(NamedTuple):
    a_squared: FieldElem
    b: FieldElem
    u: FieldElem
    v: FieldElem

    @property
    def rational(self) -> bool:
        """True iff the isomorphism (x, y) -> (a^2 x + b, a^3 y) is over F_q."""
        return chi2(self.a_squared) == 1


def lemma_alpha_pair(b: FieldElem) -> AlphaSolution | None:
    _check_char(b.F)
    if b == 0 or b == -16 or b == -24 or b == -32:
        raise ValueError(f"b = {b} is excluded")
    u = -b * b / (b + 16)
    a2 = b * (b + 32) / (32 * (b + 24))
    if a2 == 0 or not admissible(u):
        return None
    v = (u + 3 * b) / a2
    if not admissible(v):
        return None
    return AlphaSolution(a2, b, u, v)


def lemma_alpha_pairs(F: FieldSpec) -> set[tuple[int, int]]:
    """Ordered (u, v), u != v, with an F_q-rational solution of the lemma."""
    pairs = set()
    for b in enumerate_field(F):
        if b == 0 or b == -16 or b == -24 or b == -32:
            continue
        sol = lemma_alpha_pair(b)
        if sol is not None and sol.rational and sol.u != sol.v:
            pairs.add((sol.u.v, sol.v.v))
    return pairs


def gamma_curve(F: FieldSpec) -> CubicCurve:
    """a'^2 = b'(b'+1)(b'+3/4), also the curve L of the class-count formula."""
    return CubicCurve(F.from_ratio(7, 4), F.from_ratio(3, 4), F.zero)


def gamma_affine_count(F: FieldSpec) -> int:
    _check_char(F)
    if F.p == 3:
        # a^2 = 1 - b
        return sum(1 + chi2(1 - b) for b in enumerate_field(F))
    return point_count(gamma_curve(F)) - 1


def exceptional_count(F: FieldSpec) -> int:
    """Rational points among the excluded points of the gamma curve."""
    _check_char(F)
    minus_one_sq = chi2(F(-1)) == 1
    if F.p == 3:
        return 3 + 2 * minus_one_sq
    return 3 + 4 * minus_one_sq + 4 * (chi2(F(-3)) == 1)


def n_q_direct(F: FieldSpec) -> int:
    return gamma_affine_count(F) - exceptional_count(F)


def n_q_closed(F: FieldSpec) -> int:
    q = F.q
    if F.p == 3:
        return q - 5 if F.k % 2 == 0 else q - 3
    g = gamma_affine_count(F)
    return g - {1: 11, 5: 7, 7: 7, 11: 3}[q % 12]


def nbar(q: int) -> int:
    return 12 * c3(q)


def legendre34_count(F: FieldSpec) -> int:
    """Projective points on L : Y^2 = X(X+1)(X+3/4)."""
    return point_count(gamma_curve(F))


def _as_int(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def d_count_fq_formula(q: int, N: int | None = None):
    F = field_of_order(q)
    _check_char(F)
    if F.p == 3:
        num = 19 * q - 27 if F.k % 2 == 0 else 19 * q - 33
        return _as_int(Fraction(num, 24))
    if N is None:
        N = legendre34_count(F)
    base = {1: 11 * q + 1, 5: 11 * q - 7, 7: 11 * q - 5, 11: 11 * q - 13}[q % 12]
    return _as_int(Fraction(base, 12) - Fraction(N, 8))


def d_count_fq_chain(q: int):
    """The same count assembled as J + (nbar - n_q)/8."""
    F = field_of_order(q)
    return _as_int(Fraction(d_count_jbar_formula(q)) + Fraction(nbar(q) - n_q_direct(F), 8))
