"""Exact specialization targets: the rational field and cyclotomic fields.

A RingPoint bundles a field with an invertible element xi, the image of v.
Cyclotomic arithmetic is done in Q[x] modulo the n-th cyclotomic polynomial,
so evaluation at roots of unity stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .laurent import RatFunc


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated where its denominator
    vanishes."""


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n):
    """Integer coefficient tuple (low to high) of the n-th cyclotomic
    polynomial, by repeated exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    # start from x^n - 1 and divide out Phi_d for proper divisors d
    poly = [Fraction(0)] * (n + 1)
    poly[0], poly[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            phi_d = [Fraction(c) for c in cyclotomic_coeffs(d)]
            poly = _polydiv_exact(poly, phi_d)
    return tuple(int(c) for c in poly)


def _polydiv_exact(a, b):
    a = list(a)
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        f = a[i] / b[db]
        q[i - db] = f
        for j in range(db + 1):
            a[i - db + j] -= f * b[j]
    assert all(c == 0 for c in a), "inexact cyclotomic division"
    return q


class QField:
    """The rational field, wrapping fractions.Fraction."""

    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def element_str(x):
        return str(x)

    def __repr__(self):
        return "QField()"

    def __eq__(self, other):
        return isinstance(other, QField)

    def __hash__(self):
        return hash("QField")


class CycloElement:
    """An element of Q[x] / Phi_n(x), stored as a coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == field.degree

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return CycloElement(self.field,
                            [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.field.from_int(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.field, [a * other for a in self.coeffs])
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return self * other.inverse()

    def inverse(self):
        return self.field._inverse(self)

    def __repr__(self):
        return f"CycloElement(n={self.field.order}, {list(self.coeffs)})"


class CycloField:
    """The cyclotomic field Q(zeta_n) as a polynomial quotient."""

    def __init__(self, order):
        self.order = order
        self.modulus = [Fraction(c) for c in cyclotomic_coeffs(order)]
        self.degree = len(self.modulus) - 1
        self.name = f"cyclotomic({order})"
        self.zero = CycloElement(self, [Fraction(0)] * self.degree)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = CycloElement(self, one)

    def __eq__(self, other):
        return isinstance(other, CycloField) and self.order == other.order

    def __hash__(self):
        return hash(("CycloField", self.order))

    def __repr__(self):
        return f"CycloField({self.order})"

    def from_int(self, n):
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(n)
        return CycloElement(self, c)

    def zeta(self):
        """The class of x: a primitive root of unity of this order."""
        if self.degree == 1:
            # Phi_1 = x - 1, Phi_2 = x + 1: x reduces to a rational
            return self.from_int(1 if self.order == 1 else -1)
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return CycloElement(self, c)

    def _reduce(self, coeffs):
        c = list(coeffs)
        d = self.degree
        for i in range(len(c) - 1, d - 1, -1):
            f = c[i]
            if f:
                for j in range(d + 1):
                    c[i - d + j] -= f * self.modulus[j]
        return CycloElement(self, c[:d])

    def _mul(self, a, b):
        out = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] += x * y
        return self._reduce(out)

    def _inverse(self, a):
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        # extended Euclid in Q[x] against the modulus
        r0, r1 = list(self.modulus), list(a.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        # r0 is the gcd, a nonzero constant (modulus irreducible)
        lead = next(c for c in reversed(r0) if c != 0)
        inv = [c / lead for c in s0]
        inv += [Fraction(0)] * (2 * self.degree - len(inv))
        return self._reduce(inv)

    @staticmethod
    def element_str(x):
        return ",".join(str(c) for c in x.coeffs)


def _polydivmod(a, b):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    bb = list(b)
    while bb and bb[-1] == 0:
        bb.pop()
    db = len(bb) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        f = a[i] / bb[db]
        q[i - db] = f
        for j in range(db + 1):
            a[i - db + j] -= f * bb[j]
    return q, a[:db] if db else [Fraction(0)]


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    for i, y in enumerate(b):
        a[i] -= y
    return a


class RingPoint:
    """A target ring together with the invertible image xi of v."""

    def __init__(self, field, xi):
        self.field = field
        self.xi = xi
        if isinstance(field, QField):
            if xi == 0:
                raise ValueError("xi must be invertible")
            self._xi_inv = Fraction(1) / Fraction(xi)
        else:
            if not xi:
                raise ValueError("xi must be invertible")
            self._xi_inv = xi.inverse()
        self._pow_cache = {0: field.one, 1: self.xi, -1: self._xi_inv}

    @staticmethod
    def rational(xi):
        return RingPoint(QField(), Fraction(xi))

    @staticmethod
    def cyclotomic(order, power=1):
        field = CycloField(order)
        xi = field.zeta()
        z = field.one
        for _ in range(power % order if order else power):
            z = z * xi
        return RingPoint(field, z if power != 1 else xi)

    def xi_pow(self, e):
        cache = self._pow_cache
        if e in cache:
            return cache[e]
        base = self.xi if e > 0 else self._xi_inv
        out = self.field.one
        for _ in range(abs(e)):
            out = out * base
        cache[e] = out
        return out

    def __repr__(self):
        return f"RingPoint({self.field.name}, xi={self.xi!r})"


def evaluate(f: RatFunc, point: RingPoint):
    """Exact image of f under v -> xi; raises PoleError at a vanishing
    denominator."""
    den = f.den.evaluate(point.xi_pow)
    if den is None:
        den = point.field.one
    if den == 0 or (hasattr(den, "is_zero") and den.is_zero()):
        raise PoleError(
            f"denominator {f.den.to_string()} vanishes at xi={point.xi!r}")
    num = f.num.evaluate(point.xi_pow)
    if num is None:
        return point.field.zero
    return num / den
