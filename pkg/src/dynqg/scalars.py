"""Exact arithmetic in the cyclotomic field Q(zeta_ell).

A scalar is stored as an integer coefficient vector together with one positive
common denominator, reduced modulo the ell-th cyclotomic polynomial.  Keeping
integers (rather than a vector of Fractions) makes the inner loops of the
tensor code noticeably cheaper.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import DivisionByZero, EvenOrSmallEll, ZeroQFactorial

Rational = Fraction


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Divide integer/rational polynomials (low degree first)."""
    num = [Fraction(c) for c in num]
    quotient = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        factor = num[-1] / lead
        quotient[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return quotient, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first, by dividing x^n - 1 by Phi_d for d | n, d < n."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rest = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rest)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(int(c) for c in poly)


class CyclotomicField:
    """The field Q(q) with q a primitive ell-th root of unity, ell odd and >= 3."""

    def __init__(self, ell: int):
        if ell < 3 or ell % 2 == 0:
            raise EvenOrSmallEll(f"ell must be odd and >= 3, got {ell}", witness=ell)
        self.ell = ell
        self.modulus = cyclotomic_polynomial(ell)
        self.degree = len(self.modulus) - 1
        self._powers = None
        self.zero = CyclotomicScalar(self, (0,) * self.degree, 1)
        self.one = self.from_int(1)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.ell})"

    def __reduce__(self):
        return (make_field, (self.ell,))

    # construction helpers
    def from_int(self, n: int) -> "CyclotomicScalar":
        return CyclotomicScalar(self, (n,) + (0,) * (self.degree - 1), 1)

    def from_rational(self, r) -> "CyclotomicScalar":
        r = Fraction(r)
        return _make(self, [r.numerator] + [0] * (self.degree - 1), r.denominator)

    def from_coeffs(self, coeffs: Sequence) -> "CyclotomicScalar":
        """Build from rational coefficients of 1, q, q^2, ... (any length; reduced)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        return _make(self, _reduce(self, ints), den)

    def from_record(self, record: dict) -> "CyclotomicScalar":
        return _make(self, _reduce(self, list(record["num"])), int(record["den"]))

    def coerce(self, x) -> "CyclotomicScalar":
        if isinstance(x, CyclotomicScalar):
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return self.from_rational(x)

    # q-combinatorics
    def q_power(self, n: int) -> "CyclotomicScalar":
        if self._powers is None:
            powers = []
            for k in range(self.ell):
                powers.append(_make(self, _reduce(self, [0] * k + [1]), 1))
            self._powers = powers
        return self._powers[n % self.ell]

    @property
    def q(self) -> "CyclotomicScalar":
        return self.q_power(1)

    def q_int(self, n: int) -> "CyclotomicScalar":
        """[n]_q = (q^n - q^-n) / (q - q^-1)."""
        return _q_int(self, n)

    def q_factorial(self, n: int) -> "CyclotomicScalar":
        result = self.one
        for k in range(1, n + 1):
            result = result * self.q_int(k)
        return result

    def q_factorial_inverse(self, n: int) -> "CyclotomicScalar":
        value = self.q_factorial(n)
        if not value:
            raise ZeroQFactorial(f"[{n}]_q! vanishes for ell={self.ell}", witness=n)
        return value.inverse()

    def random(self, rng, bound: int = 5) -> "CyclotomicScalar":
        coeffs = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(self.degree)]
        return self.from_coeffs(coeffs)


@lru_cache(maxsize=None)
def make_field(ell: int) -> CyclotomicField:
    return CyclotomicField(ell)


def _reduce(field: CyclotomicField, coeffs: list) -> list:
    """Reduce an integer coefficient list modulo the (monic) cyclotomic polynomial."""
    d = field.degree
    m = field.modulus
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[k]
        if c:
            base = k - d
            for j in range(d):
                if m[j]:
                    coeffs[base + j] -= c * m[j]
        coeffs.pop()
    if len(coeffs) < d:
        coeffs.extend([0] * (d - len(coeffs)))
    return coeffs


def _make(field: CyclotomicField, num: list, den: int) -> "CyclotomicScalar":
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = gcd(den, *num)
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return CyclotomicScalar(field, tuple(num), den)


class CyclotomicScalar:
    """An element of Q(zeta_ell): sum(num[i] q^i) / den, canonical."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num: tuple, den: int):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # predicates
    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicScalar):
            return self.num == other.num and self.den == other.den and self.field.ell == other.field.ell
        if isinstance(other, (int, Fraction)):
            return self == self.field.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic
    def __neg__(self) -> "CyclotomicScalar":
        return CyclotomicScalar(self.field, tuple(-c for c in self.num), self.den)

    def __add__(self, other) -> "CyclotomicScalar":
        if not isinstance(other, CyclotomicScalar):
            other = self.field.coerce(other)
        a, da = self.num, self.den
        b, db = other.num, other.den
        if da == db:
            return _make(self.field, [x + y for x, y in zip(a, b)], da)
        return _make(self.field, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __sub__(self, other) -> "CyclotomicScalar":
        if not isinstance(other, CyclotomicScalar):
            other = self.field.coerce(other)
        a, da = self.num, self.den
        b, db = other.num, other.den
        if da == db:
            return _make(self.field, [x - y for x, y in zip(a, b)], da)
        return _make(self.field, [x * db - y * da for x, y in zip(a, b)], da * db)

    def __rsub__(self, other) -> "CyclotomicScalar":
        return self.field.coerce(other) - self

    def __mul__(self, other) -> "CyclotomicScalar":
        if not isinstance(other, CyclotomicScalar):
            if isinstance(other, int):
                return _make(self.field, [c * other for c in self.num], self.den)
            other = self.field.coerce(other)
        field = self.field
        a = self.num
        b = other.num
        d = field.degree
        if not any(a[1:]):
            s = a[0]
            prod = [s * c for c in b]
        elif not any(b[1:]):
            s = b[0]
            prod = [s * c for c in a]
        elif d == 2:
            # Phi_3 = x^2 + x + 1
            a0, a1 = a
            b0, b1 = b
            t = a1 * b1
            prod = [a0 * b0 - t, a0 * b1 + a1 * b0 - t]
        else:
            prod = [0] * (2 * d - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            prod[i + j] += ai * bj
            prod = _reduce(field, prod)
        return _make(field, prod, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CyclotomicScalar":
        if not isinstance(other, CyclotomicScalar):
            other = self.field.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CyclotomicScalar":
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "CyclotomicScalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CyclotomicScalar":
        if not self:
            raise DivisionByZero("inverse of zero in the cyclotomic field")
        field = self.field
        if self.is_rational():
            return field.from_rational(Fraction(self.den, self.num[0]))
        inv = _poly_inverse(list(self.num), list(field.modulus))
        den = 1
        for c in inv:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in inv] + [0] * (field.degree - len(inv))
        # a/den_a inverted: multiply numerator inverse by den_a
        return _make(field, [c * self.den for c in ints[: field.degree]], den)

    # views
    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return Fraction(self.num[0], self.den)

    def to_record(self) -> dict:
        return {"num": list(self.num), "den": self.den}

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.num):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*q^{i}")
        body = " + ".join(parts) or "0"
        return body if self.den == 1 else f"({body})/{self.den}"


def _poly_inverse(a: list, modulus: list) -> list:
    """Inverse of a modulo modulus over Q via the extended Euclidean algorithm."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    r0, r1 = trim([Fraction(c) for c in modulus]), trim([Fraction(c) for c in a])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        quotient, rest = _poly_divmod(r0, r1)
        rest = trim(list(rest))
        prod = _poly_mul(quotient, s1)
        s_new = _poly_sub(s0, prod)
        r0, r1 = r1, rest
        s0, s1 = s1, s_new
        if not r1:
            raise DivisionByZero("non-invertible residue (modulus not irreducible?)")
    c = r1[0]
    return [x / c for x in s1]


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


@lru_cache(maxsize=None)
def _q_int(field: CyclotomicField, n: int) -> CyclotomicScalar:
    q = field.q
    numerator = field.q_power(n) - field.q_power(-n)
    return numerator / (q - field.q_power(-1))


def field_arith(a: CyclotomicScalar, b: CyclotomicScalar, op: str) -> CyclotomicScalar:
    """Dispatch helper mirroring the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def q_combinatorics(field: CyclotomicField, n: int, kind: str) -> CyclotomicScalar:
    if kind == "q_int":
        return field.q_int(n)
    if kind == "q_factorial":
        return field.q_factorial(n)
    if kind == "q_power":
        return field.q_power(n)
    raise ValueError(f"unknown kind {kind!r}")


class LambdaParam(tuple):
    """Nonzero rational parameters (Lambda_1, ..., Lambda_m)."""

    def __new__(cls, values: Iterable):
        vals = tuple(Fraction(v) for v in values)
        if any(v == 0 for v in vals):
            raise ValueError("Lambda entries must be nonzero")
        return super().__new__(cls, vals)

    def power(self, weight: Sequence[int]) -> Fraction:
        """Lambda_beta = prod Lambda_i^{beta_i}."""
        result = Fraction(1)
        for value, exponent in zip(self, weight):
            result *= value ** exponent
        return result


def genericity_check(Lambda: LambdaParam, weights: Iterable[Sequence[int]], order_factor: int, ell: int):
    """Return (True, None) if no Lambda_alpha is an (order_factor*ell)-th root of unity.

    For rational Lambda_alpha only 1 and (for even exponent) -1 can be roots of
    unity, so the test is exact.
    """
    exponent = order_factor * ell
    for weight in sorted(tuple(w) for w in weights):
        value = Lambda.power(weight)
        if value ** exponent == 1:
            return False, weight
    return True, None
