"""Rational angles of the cosines that can occur as degree-<=2 eigenvalues of P.

Each lam = cos(r*pi) with r in [0, 1] rational and lam of degree at most 2 over Q
is one of the thirteen table entries; anything else has no rational angle (or a
cosine of higher degree) and is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnrecognizedAngle
from .scalars import Scalar, as_scalar, format_scalar, quadratic

F = Fraction

COS_TABLE: dict[Scalar, Fraction] = {
    F(1): F(0),
    F(1, 2): F(1, 3),
    F(0): F(1, 2),
    F(-1, 2): F(2, 3),
    F(-1): F(1),
    quadratic(0, F(1, 2), 2): F(1, 4),
    quadratic(0, F(-1, 2), 2): F(3, 4),
    quadratic(0, F(1, 2), 3): F(1, 6),
    quadratic(0, F(-1, 2), 3): F(5, 6),
    quadratic(F(1, 4), F(1, 4), 5): F(1, 5),
    quadratic(F(-1, 4), F(1, 4), 5): F(2, 5),
    quadratic(F(1, 4), F(-1, 4), 5): F(3, 5),
    quadratic(F(-1, 4), F(-1, 4), 5): F(4, 5),
}


def angle_of(lam) -> Fraction:
    """r with lam = cos(r*pi), 0 <= r <= 1."""
    lam = as_scalar(lam)
    try:
        return COS_TABLE[lam]
    except KeyError:
        raise UnrecognizedAngle(f"{format_scalar(lam)} is not the cosine of a rational angle of degree <= 2") from None


def chebyshev_value(m: int, x):
    """T_m(x) by the three-term recurrence (exact for exact x)."""
    prev, cur = as_scalar(1), as_scalar(x)
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def unit_order(r: Fraction) -> int:
    """Multiplicative order of exp(i*r*pi)."""
    return r.denominator if r.numerator % 2 == 0 else 2 * r.denominator


@dataclass(frozen=True)
class AngleCertificate:
    eigenvalue: Scalar
    tau: int
    j: int

    @property
    def parity(self) -> int:
        return self.j % 2


def angle_certificate(lam, tau: int) -> AngleCertificate | None:
    """j with lam = cos(j*pi/tau) and 0 <= j <= tau, or None when j would not be
    an integer.  Raises UnrecognizedAngle if lam has no rational angle."""
    if tau < 1:
        raise ValueError("tau must be positive")
    r = angle_of(lam)
    j = r * tau
    if j.denominator != 1:
        return None
    return AngleCertificate(as_scalar(lam), tau, int(j))


def spectral_period(eigenvalues, extra_minus_one: bool) -> int | None:
    """lcm of the orders of exp(+-i*arccos(lam)) over the given P-eigenvalues,
    with -1 folded in when extra_minus_one.  None if some angle is irrational."""
    period = 2 if extra_minus_one else 1
    for lam in eigenvalues:
        try:
            r = angle_of(lam)
        except UnrecognizedAngle:
            return None
        period = math.lcm(period, unit_order(r))
    return period
