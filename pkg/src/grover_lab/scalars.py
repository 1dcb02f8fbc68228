"""Exact scalars: rationals (``fractions.Fraction``) and elements a + b*sqrt(D) of a
real quadratic field.

A value is either a ``Fraction`` or a ``QuadraticNumber`` with ``b != 0``; every
constructor here collapses the ``b == 0`` case back to ``Fraction`` so equality and
hashing behave the same however a number was produced.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import FieldMismatch

Scalar = Union[Fraction, "QuadraticNumber"]


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, f) with n = f*f*s and s square-free (n > 0)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, f = 1, 1
    p = 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1
    return s * m, f


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def sqrt_rational(x: Rational) -> Scalar:
    """Exact square root of a non-negative rational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    if x == 0:
        return Fraction(0)
    # sqrt(p/q) = sqrt(p*q)/q
    return quadratic(0, Fraction(1, x.denominator), x.numerator * x.denominator)


def quadratic(a, b, radicand: int) -> Scalar:
    """Build a + b*sqrt(radicand), normalising the radicand to be square-free."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return a
    if radicand <= 0:
        raise ValueError("only real quadratic fields are supported")
    s, f = squarefree_decomposition(radicand)
    if s == 1:
        return a + b * f
    return QuadraticNumber(a, b * f, s)


def _make(a: Fraction, b: Fraction, d: int) -> Scalar:
    # d is already square-free here
    return a if b == 0 else QuadraticNumber(a, b, d)


def _sign(p: Fraction, q: Fraction, d: int) -> int:
    """Sign of p + q*sqrt(d) for square-free d > 1."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0 or sp == sq:
        return sp if sp else sq
    if sp == 0:
        return sq
    c = p * p - q * q * d
    return sp if c > 0 else sq


def _bounds(x: Scalar, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of x of width about 2**-bits (integer sqrt only)."""
    if isinstance(x, Fraction):
        return x, x
    scale = 1 << bits
    r = math.isqrt(x.d * scale * scale)
    lo, hi = Fraction(r, scale), Fraction(r + 1, scale)
    if x.b > 0:
        return x.a + x.b * lo, x.a + x.b * hi
    return x.a + x.b * hi, x.a + x.b * lo


def compare(x: Scalar, y: Scalar) -> int:
    """Exact three-way comparison, valid across different quadratic fields."""
    x, y = as_scalar(x), as_scalar(y)
    dx = x.d if isinstance(x, QuadraticNumber) else None
    dy = y.d if isinstance(y, QuadraticNumber) else None
    if dx is None or dy is None or dx == dy:
        diff = x - y
        if isinstance(diff, Fraction):
            return (diff > 0) - (diff < 0)
        return _sign(diff.a, diff.b, diff.d)
    # Different fields: the values cannot be equal, so refining enclosures terminates.
    bits = 32
    while True:
        xl, xh = _bounds(x, bits)
        yl, yh = _bounds(y, bits)
        if xh < yl:
            return -1
        if yh < xl:
            return 1
        bits *= 2


class QuadraticNumber:
    """a + b*sqrt(d) with rational a, b (b != 0) and square-free d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)
        if self.b == 0:
            raise ValueError("use quadratic() for possibly-rational values")

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt({self.d})) vs Q(sqrt({other.d}))")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return _make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return _make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return _make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadraticNumber):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return _make(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticNumber({self.a!s}, {self.b!s}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def as_scalar(x) -> Scalar:
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_rational(x) -> bool:
    return not isinstance(x, QuadraticNumber)


def field_of(x) -> int:
    """Radicand of the field x lives in; 1 for rationals."""
    return x.d if isinstance(x, QuadraticNumber) else 1


def conjugate(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, QuadraticNumber) else x


def _fmt_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Stable text form: "p/q" for rationals, "a+b*sqrt(D)" otherwise."""
    if isinstance(x, QuadraticNumber):
        sign = "+" if x.b > 0 else "-"
        return f"{_fmt_rational(x.a)}{sign}{_fmt_rational(abs(x.b))}*sqrt({x.d})"
    return _fmt_rational(Fraction(x))


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar`."""
    text = text.strip()
    if "sqrt" not in text:
        return Fraction(text)
    head, _, rad = text.partition("*sqrt(")
    d = int(rad.rstrip(")"))
    # split a and b at the sign that starts b (skip a leading sign on a)
    cut = max(head.rfind("+"), head.rfind("-"))
    a, b = head[:cut], head[cut:]
    return quadratic(Fraction(a), Fraction(b), d)


def is_algebraic_integer(x: Scalar) -> bool:
    """Membership in the ring of integers of Q or Q(sqrt(d)).

    For d = 2, 3 (mod 4) the ring is Z[sqrt(d)]; for d = 1 (mod 4) it is
    Z[(1 + sqrt(d))/2], i.e. x = p + q(1 + sqrt(d))/2 with integers p, q.
    """
    if isinstance(x, Fraction) or isinstance(x, int):
        return Fraction(x).denominator == 1
    if x.d % 4 == 1:
        q = 2 * x.b
        p = x.a - x.b
        return q.denominator == 1 and p.denominator == 1
    return x.a.denominator == 1 and x.b.denominator == 1
