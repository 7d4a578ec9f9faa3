"""Exact arithmetic in F_q, q = p^k with p odd.

Elements are stored as their index in the canonical enumeration: the
coefficient vector (constant term first) read as a base-p integer, so
index 0 is zero, index 1 is one, index p is X, and so on.

Prime fields use plain modular arithmetic.  Extension fields use
log/antilog tables relative to the first primitive element together with
a Zech logarithm table for addition, which keeps every operation O(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

DEFAULT_MAX_Q = 10**6


class FieldError(ValueError):
    pass


# -- small helpers on integers ------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p^k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    k, n = 0, q
    while n > 1:
        n //= p[0]
        k += 1
    return p[0], k


# -- polynomials over F_p (coefficient lists, constant term first) -------------

def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p.

    f is irreducible of degree k iff X^(p^k) = X mod f and
    gcd(X^(p^(k/l)) - X, f) = 1 for every prime l dividing k.
    """
    f = _trim(f)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**k, f, p), x, p):
        return False
    for ell in prime_factors(k):
        h = _poly_sub(_poly_powmod(x, p ** (k // ell), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p,
    comparing coefficient lists constant term first."""
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        # constant term is the most significant digit of the scan
        digits = [(n // p ** (k - 1 - i)) % p for i in range(k)]
        f = digits + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


# -- the field ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.k)

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    # ---- raw index arithmetic ----

    def digits(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.k)]

    def from_digits(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            coeffs = _poly_mod(coeffs, list(self.modulus), self.p)
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    @cached_property
    def _tables(self):
        """(exp, log, zech, generator) for the multiplicative group."""
        p, q, m = self.p, self.q, self.q - 1
        mod = list(self.modulus)
        factors = prime_factors(m) if m > 1 else []

        def polymul_idx(a: int, b: int) -> int:
            if self.k == 1:
                return a * b % p
            return self.from_digits(
                _poly_mod(_poly_mul(self.digits(a), self.digits(b), p), mod, p)
            )

        def powidx(a: int, e: int) -> int:
            r = 1
            while e:
                if e & 1:
                    r = polymul_idx(r, a)
                a = polymul_idx(a, a)
                e >>= 1
            return r

        gen = next(
            g for g in range(1, q)
            if all(powidx(g, m // ell) != 1 for ell in factors)
        )
        exp = [0] * m
        log = [-1] * q
        x = 1
        for e in range(m):
            exp[e] = x
            log[x] = e
            x = polymul_idx(x, gen)
        zech = [-1] * m
        for e in range(m):
            y = exp[e]
            c0 = y % p
            y1 = y - c0 + (c0 + 1) % p
            zech[e] = log[y1] if y1 else -1
        return exp, log, zech, gen

    @property
    def exp_table(self) -> list[int]:
        return self._tables[0]

    @property
    def log_table(self) -> list[int]:
        return self._tables[1]

    @property
    def generator(self) -> FieldElem:
        return FieldElem(self._tables[3], self)

    def add_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        exp, log, zech, _ = self._tables
        la = log[a]
        z = zech[(log[b] - la) % (self.q - 1)]
        return 0 if z < 0 else exp[(la + z) % (self.q - 1)]

    def neg_raw(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_digits([-d for d in self.digits(a)])

    def mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log, _, _ = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv_raw(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        if self.k == 1:
            return pow(a, -1, self.p)
        exp, log, _, _ = self._tables
        return exp[-log[a] % (self.q - 1)]

    def pow_raw(self, a: int, e: int) -> int:
        if self.k == 1:
            if a == 0:
                if e < 0:
                    raise ZeroDivisionError("negative power of zero")
                return 1 if e == 0 else 0
            return pow(a, e % (self.p - 1), self.p)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        exp, log, _, _ = self._tables
        return exp[log[a] * e % (self.q - 1)]

    def discrete_log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self.log_table[a]

    # ---- element constructors ----

    def __call__(self, n) -> FieldElem:
        return self.from_int(n)

    def from_int(self, n: int) -> FieldElem:
        return FieldElem(n % self.p, self)

    def from_ratio(self, n: int, d: int) -> FieldElem:
        if d % self.p == 0:
            raise ZeroDivisionError(f"denominator {d} vanishes in characteristic {self.p}")
        return self.from_int(n) * self.from_int(d).inv()

    def elem(self, coeffs) -> FieldElem:
        """Element from a coefficient list (constant term first)."""
        return FieldElem(self.from_digits(coeffs), self)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    def elements(self) -> list[FieldElem]:
        return enumerate_field(self)


class FieldElem:
    """An element of F_q, held as its canonical enumeration index."""

    __slots__ = ("v", "F")

    def __init__(self, v: int, F: FieldSpec):
        self.v = v
        self.F = F

    @property
    def coeffs(self) -> list[int]:
        return self.F.digits(self.v)

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.F is not self.F and other.F != self.F:
                raise FieldError("mixed fields: %r vs %r" % (self.F, other.F))
            return other
        if isinstance(other, int):
            return self.F.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.F.add_raw(self.v, o.v), self.F)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.F.neg_raw(self.v), self.F)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.F.add_raw(self.v, self.F.neg_raw(o.v)), self.F)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.F.mul_raw(self.v, o.v), self.F)

    __rmul__ = __mul__

    def inv(self) -> FieldElem:
        return FieldElem(self.F.inv_raw(self.v), self.F)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        return FieldElem(self.F.pow_raw(self.v, e), self.F)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.v == other.v and self.F == other.F
        if isinstance(other, int):
            return self.v == other % self.F.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self)

    def __str__(self):
        if self.F.k == 1:
            return str(self.v)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "X" if i == 1 else f"X^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"

    def to_json(self):
        """Plain int for prime fields, coefficient list otherwise."""
        return self.v if self.F.k == 1 else self.coeffs


# -- operations ----------------------------------------------------------------

@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p == 2:
        raise FieldError("characteristic 2 is not supported")
    if p**k > max_q:
        raise FieldError(f"q = {p}^{k} exceeds the field size bound {max_q}")
    return FieldSpec(p, k, smallest_irreducible(p, k))


def field_of_order(q: int, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(pk[0], pk[1], max_q)


@lru_cache(maxsize=None)
def _elements(F: FieldSpec) -> tuple[FieldElem, ...]:
    return tuple(FieldElem(i, F) for i in range(F.q))


def enumerate_field(F: FieldSpec) -> list[FieldElem]:
    """All q elements in canonical order: 0, 1, ..., p-1, X, X+1, ..."""
    return list(_elements(F))


def chi2(x: FieldElem) -> int:
    """Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
    if x.v == 0:
        return 0
    F = x.F
    if F.k == 1:
        return 1 if pow(x.v, (F.p - 1) // 2, F.p) == 1 else -1
    return 1 if F.log_table[x.v] % 2 == 0 else -1


def is_power(x: FieldElem, n: int) -> bool:
    """True iff x = y^n for some nonzero y (x must be nonzero)."""
    if x.v == 0:
        raise FieldError("power test on zero")
    m = x.F.q - 1
    return x.F.pow_raw(x.v, m // math.gcd(n, m)) == 1


def is_cube(x: FieldElem) -> bool:
    return is_power(x, 3)


def nth_roots(x: FieldElem, n: int) -> list[FieldElem]:
    """All y in F_q with y^n = x, via discrete logarithms, sorted."""
    F = x.F
    if x.v == 0:
        return [F.zero]
    m = F.q - 1
    d = math.gcd(n, m)
    e = F.log_table[x.v]
    g = F.generator
    if e % d:
        return []
    # n*t = e (mod m) has d solutions mod m
    n1, e1, m1 = n // d, e // d, m // d
    t0 = e1 * pow(n1, -1, m1) % m1 if m1 > 1 else 0
    roots = [g ** (t0 + i * m1) for i in range(d)]
    return sorted(roots, key=lambda y: y.v)


def sqrt_all(x: FieldElem) -> list[FieldElem]:
    return nth_roots(x, 2)


def cbrt_all(x: FieldElem) -> list[FieldElem]:
    return nth_roots(x, 3)


def roots_by_scan(x: FieldElem, n: int) -> list[FieldElem]:
    """Reference root finder: test every element."""
    return [y for y in enumerate_field(x.F) if y**n == x]


def primitive_cube_root(F: FieldSpec) -> FieldElem:
    """First ζ ≠ 1 with ζ^3 = 1 in enumeration order."""
    if F.p == 3 or F.q % 3 != 1:
        raise FieldError(f"F_{F.q} has no primitive cube root of unity")
    for z in enumerate_field(F)[2:]:
        if z**3 == 1:
            return z
    raise AssertionError("unreachable: q = 1 mod 3 guarantees a cube root of unity")
