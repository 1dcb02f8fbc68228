"""Exact dense linear algebra over Q and Q(sqrt(D)).

Matrices are stored fraction-free: an integer numpy array plus one positive
common denominator.  Integer kernels run in int64 whenever an a-priori bound
proves the result fits, and fall back to Python integers (object arrays)
otherwise, so results are exact at every size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import FieldMismatch, IrreducibleCubicOrHigher
from .scalars import (
    QuadraticNumber,
    Scalar,
    as_scalar,
    compare,
    conjugate,
    format_scalar,
    is_square,
    quadratic,
)

_LIMIT = 1 << 62


# --- integer array kernels -------------------------------------------------------


def _maxabs(a: np.ndarray) -> int:
    return int(np.abs(a).max()) if a.size else 0


def _compact(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _LIMIT:
        return a.astype(np.int64)
    return a


def _obj(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of integer arrays."""
    inner = a.shape[-1]
    if a.dtype != object and b.dtype != object and _maxabs(a) * _maxabs(b) * inner < _LIMIT:
        return a @ b
    return _compact(np.dot(_obj(a), _obj(b)))


def _scale(a: np.ndarray, s: int) -> np.ndarray:
    s = int(s)
    if a.dtype != object and abs(s) < _LIMIT and _maxabs(a) * abs(s) < _LIMIT:
        return a * np.int64(s)
    return _compact(_obj(a) * s)


def _add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _LIMIT:
        return a + b
    return _compact(_obj(a) + _obj(b))


def _gcd_all(a: np.ndarray) -> int:
    if not a.size:
        return 0
    if a.dtype == object:
        return reduce(math.gcd, (int(v) for v in a.flat), 0)
    return int(np.gcd.reduce(a, axis=None))


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# --- rational matrices ------------------------------------------------------------


class ExactMatrix:
    """Rational matrix num/den with gcd(num entries, den) = 1 and den > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        arr = np.asarray(num)
        if arr.dtype.kind not in "iuO":
            raise TypeError("ExactMatrix numerators must be integers; use from_fractions")
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("matrix dimensions must be positive")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        arr = _compact(arr.astype(np.int64) if arr.dtype.kind in "iu" else arr)
        if den < 0:
            arr, den = _scale(arr, -1), -den
        g = math.gcd(_gcd_all(arr), den)
        if g > 1:
            arr = _compact(arr // g) if arr.dtype == object else arr // g
            den //= g
        arr.setflags(write=False)
        self.num = arr
        self.den = den

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        fr = [[Fraction(v) for v in row] for row in rows]
        den = reduce(_lcm, (v.denominator for row in fr for v in row), 1)
        num = np.array([[int(v * den) for v in row] for row in fr], dtype=object)
        return cls(num, den)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        return cls(np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    @property
    def is_integer(self) -> bool:
        return self.den == 1

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.num[i, j]), self.den)

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(int(v), self.den) for v in row] for row in self.num]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.num.T, self.den)

    T = property(transpose)

    def trace(self) -> Fraction:
        return Fraction(int(np.trace(_obj(self.num))), self.den)

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def column_is_zero(self, x: int) -> bool:
        return not np.any(self.num[:, x])

    def column_relation(self, x: int, y: int) -> int | None:
        """+1 if columns x and y agree, -1 if opposite, else None (zero counts as +1)."""
        a, b = self.num[:, x], self.num[:, y]
        if np.array_equal(a, b):
            return 1
        if np.array_equal(a, -b):
            return -1
        return None

    def _aligned(self, other: "ExactMatrix"):
        den = _lcm(self.den, other.den)
        return _scale(self.num, den // self.den), _scale(other.num, den // other.den), den

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        a, b, den = self._aligned(other)
        return ExactMatrix(_add(a, b), den)

    def __neg__(self):
        return ExactMatrix(_scale(self.num, -1), self.den)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, (int, Fraction)):
            s = Fraction(s)
            return ExactMatrix(_scale(self.num, s.numerator), self.den * s.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, (int, Fraction)):
            return self * (1 / Fraction(s))
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, QuadMatrix):
            return other.__rmatmul__(self)
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix(int_matmul(self.num, other.num), self.den * other.den)

    def __pow__(self, e: int):
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        result = ExactMatrix.identity(self.shape[0])
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def add_scalar_identity(self, s) -> "ExactMatrix":
        """self + s*I for rational s."""
        return self + ExactMatrix.identity(self.shape[0]) * Fraction(s)

    def __eq__(self, other):
        if isinstance(other, QuadMatrix):
            return other == self
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.den == other.den and self.shape == other.shape and np.array_equal(
            self.num, other.num
        )

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix(shape={self.shape}, den={self.den})"


class QuadMatrix:
    """rat + irr*sqrt(d) with rational matrices rat, irr and square-free d > 1."""

    __slots__ = ("rat", "irr", "d")

    def __init__(self, rat: ExactMatrix, irr: ExactMatrix, d: int):
        if rat.shape != irr.shape:
            raise ValueError("rational and irrational parts differ in shape")
        self.rat, self.irr, self.d = rat, irr, int(d)

    @property
    def shape(self):
        return self.rat.shape

    def _parts(self, other):
        if isinstance(other, QuadMatrix):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt({self.d})) vs Q(sqrt({other.d}))")
            return other.rat, other.irr
        if isinstance(other, ExactMatrix):
            return other, ExactMatrix.zeros(*other.shape)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadMatrix(self.rat + p[0], self.irr + p[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadMatrix(-self.rat, -self.irr, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __matmul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        x, y = p
        return QuadMatrix(
            self.rat @ x + (self.irr @ y) * self.d, self.rat @ y + self.irr @ x, self.d
        )

    def __rmatmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return QuadMatrix(other @ self.rat, other @ self.irr, self.d)

    def scale(self, s: Scalar) -> "QuadMatrix":
        s = as_scalar(s)
        if isinstance(s, Fraction):
            return QuadMatrix(self.rat * s, self.irr * s, self.d)
        if s.d != self.d:
            raise FieldMismatch(f"Q(sqrt({self.d})) vs Q(sqrt({s.d}))")
        return QuadMatrix(
            self.rat * s.a + self.irr * (s.b * self.d), self.rat * s.b + self.irr * s.a, self.d
        )

    def trace(self) -> Scalar:
        return quadratic(self.rat.trace(), self.irr.trace(), self.d)

    def transpose(self) -> "QuadMatrix":
        return QuadMatrix(self.rat.transpose(), self.irr.transpose(), self.d)

    T = property(transpose)

    def conjugate(self) -> "QuadMatrix":
        return QuadMatrix(self.rat, -self.irr, self.d)

    def entry(self, i: int, j: int) -> Scalar:
        return quadratic(self.rat.entry(i, j), self.irr.entry(i, j), self.d)

    def is_zero(self) -> bool:
        return self.rat.is_zero() and self.irr.is_zero()

    def column_is_zero(self, x: int) -> bool:
        return self.rat.column_is_zero(x) and self.irr.column_is_zero(x)

    def column_relation(self, x: int, y: int) -> int | None:
        r, i = self.rat.column_relation(x, y), self.irr.column_relation(x, y)
        if r is None or i is None:
            return None
        if r == i:
            return r
        # one part is zero in both columns, so its relation is vacuous
        if self.rat.column_is_zero(x) and self.rat.column_is_zero(y):
            return i
        if self.irr.column_is_zero(x) and self.irr.column_is_zero(y):
            return r
        return None

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.irr.is_zero() and self.rat == other
        if not isinstance(other, QuadMatrix):
            return NotImplemented
        return self.d == other.d and self.rat == other.rat and self.irr == other.irr

    __hash__ = None

    def __repr__(self):
        return f"QuadMatrix(shape={self.shape}, d={self.d})"


AnyMatrix = Union[ExactMatrix, QuadMatrix]


def scale_matrix(m: AnyMatrix, s: Scalar) -> AnyMatrix:
    s = as_scalar(s)
    if isinstance(m, QuadMatrix):
        return m.scale(s)
    if isinstance(s, Fraction):
        return m * s
    return QuadMatrix(m * s.a, m * s.b, s.d)


# --- polynomials (coefficient lists, ascending degree) ---------------------------


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_divmod(p: Sequence[int], q: Sequence[int]) -> tuple[list, list]:
    """Divide p by a monic q (ascending coefficients). Returns (quotient, remainder)."""
    if q[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(p)
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [0], r
    quo = [0] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i]
        quo[i - dq] = c
        if c:
            for j in range(dq + 1):
                r[i - dq + j] -= c * q[j]
    rem = r[:dq] or [0]
    return quo, rem


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = str(mag) if (mag != 1 or i == 0) else ""
        body = f"{body}*{mono}" if body and mono else body or mono
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return head + "".join(f" {s} {b}" for s, b in terms[1:])


def _poly_rem(p: list, q: list) -> list:
    """Remainder of p by q over Q (q with nonzero leading coefficient)."""
    r = [Fraction(c) for c in p]
    while len(r) >= len(q) and any(r):
        c = r[-1] / q[-1]
        shift = len(r) - len(q)
        for j, qc in enumerate(q):
            r[shift + j] -= c * qc
        r.pop()
    while len(r) > 1 and r[-1] == 0:
        r.pop()
    return r or [Fraction(0)]


def poly_gcd(p: Sequence, q: Sequence) -> list:
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]
    while any(b):
        a, b = b, _poly_rem(a, b)
    return [c / a[-1] for c in a]


def distinct_root_count(cp: Sequence) -> int:
    """Number of distinct complex roots: deg p - deg gcd(p, p')."""
    deriv = [i * c for i, c in enumerate(cp)][1:] or [0]
    return (len(cp) - 1) - (len(poly_gcd(cp, deriv)) - 1)


# --- characteristic polynomial ---------------------------------------------------


def _primes_below(limit: int):
    """Primes descending from limit (trial division; only a few dozen are needed)."""
    c = limit - 1 if limit % 2 == 0 else limit - 2
    while c > 2:
        if all(c % p for p in range(3, math.isqrt(c) + 1, 2)):
            yield c
        c -= 2


def _charpoly_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial of an int64 matrix mod p (ascending coefficients)."""
    h = a % p
    n = h.shape[0]
    # similarity reduction to upper Hessenberg form
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1:, j])
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1], :] = h[[j + 1, i], :]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        f = (h[j + 2:, j] * inv) % p
        if not f.any():
            continue
        h[j + 2:, :] = (h[j + 2:, :] - (f[:, None] * h[j + 1, :][None, :]) % p) % p
        h[:, j + 1] = (h[:, j + 1] + (h[:, j + 2:] @ f) % p) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(n):
        cur = polys[m]
        nxt = np.zeros(n + 1, dtype=np.int64)
        nxt[1:] = cur[:-1]
        nxt = (nxt - (int(h[m, m]) * cur) % p) % p
        if m:
            coef = np.zeros(m, dtype=np.int64)
            prod = 1
            for i in range(m - 1, -1, -1):
                prod = (prod * int(h[i + 1, i])) % p
                coef[i] = (int(h[i, m]) * prod) % p
            nxt = (nxt - (coef @ polys[:m]) % p) % p
        polys[m + 1] = nxt
    return polys[n]


def _charpoly_integer(num: np.ndarray) -> list[int]:
    n = num.shape[0]
    rho = max(int(sum(abs(int(v)) for v in row)) for row in num)
    bound = (1 + rho) ** n
    residues, modulus = None, 1
    for p in _primes_below(1 << 24):
        cp = _charpoly_mod(np.array([[int(v) % p for v in row] for row in num], dtype=np.int64), p)
        if residues is None:
            residues, modulus = [int(c) for c in cp], p
        else:
            # Garner step: x = r + modulus * t with t = (c - r) / modulus mod p
            inv = pow(modulus % p, p - 2, p)
            residues = [r + modulus * (((int(c) - r) * inv) % p) for r, c in zip(residues, cp)]
            modulus *= p
        if modulus > 2 * bound:
            break
    return [r - modulus if r > modulus // 2 else r for r in residues]


def char_poly(m: ExactMatrix, require_integer: bool = True) -> list:
    """det(xI - m) as ascending coefficients (ints, or Fractions for rational input)."""
    if not m.is_square:
        raise ValueError(f"characteristic polynomial of a non-square {m.shape} matrix")
    if require_integer and not m.is_integer:
        raise ValueError("matrix has non-integer entries")
    coeffs = _charpoly_integer(m.num)
    if m.den == 1:
        return coeffs
    n = m.shape[0]
    return [Fraction(c, m.den ** (n - i)) for i, c in enumerate(coeffs)]


# --- spectra ----------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[tuple[Scalar, int], ...]
    charpoly: tuple[int, ...]

    @property
    def distinct(self) -> tuple[Scalar, ...]:
        return tuple(v for v, _ in self.eigenvalues)

    def multiplicity(self, value) -> int:
        value = as_scalar(value)
        for v, m in self.eigenvalues:
            if v == value:
                return m
        return 0

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, Fraction) and v.denominator == 1 for v in self.distinct)

    def as_multiset(self) -> dict:
        return dict(self.eigenvalues)

    def __str__(self):
        return "{" + ", ".join(f"[{format_scalar(v)}]^{m}" for v, m in self.eigenvalues) + "}"


def _row_bound(num: np.ndarray) -> int:
    return max(int(sum(abs(int(v)) for v in row)) for row in num)


def _split_roots(cp: list[int], rho: int):
    """Factor a monic integer polynomial whose roots are real with |root| <= rho
    into integer roots and irreducible quadratics.  Returns (roots, quads, residual)."""
    rest = list(cp)
    roots: dict[int, int] = {}
    while len(rest) > 1 and rest[0] == 0:
        rest = rest[1:]
        roots[0] = roots.get(0, 0) + 1
    for c in range(-rho, rho + 1):
        if c == 0:
            continue
        while len(rest) > 1 and rest[0] % c == 0:
            quo, rem = poly_divmod(rest, [-c, 1])
            if rem[0] != 0:
                break
            rest = quo
            roots[c] = roots.get(c, 0) + 1
    quads: dict[tuple[int, int], int] = {}
    if len(rest) > 2:
        for b in range(-2 * rho + 1, 2 * rho):
            for c in range(-rho * rho, rho * rho + 1):
                if len(rest) <= 2:
                    break
                disc = b * b - 4 * c
                if c == 0 or disc <= 0 or is_square(disc) or rest[0] % c:
                    continue
                while len(rest) > 2 and rest[0] % c == 0:
                    quo, rem = poly_divmod(rest, [c, b, 1])
                    if any(rem):
                        break
                    rest = quo
                    quads[(b, c)] = quads.get((b, c), 0) + 1
    return roots, quads, rest


def exact_spectrum(a: ExactMatrix) -> SpectrumReport:
    """Spectrum of an integer symmetric matrix whose eigenvalues have degree <= 2."""
    if not a.is_square or not a.is_integer:
        raise ValueError("exact_spectrum needs a square integer matrix")
    if not np.array_equal(a.num, a.num.T):
        raise ValueError("exact_spectrum needs a symmetric matrix")
    cp = char_poly(a)
    roots, quads, rest = _split_roots(cp, _row_bound(a.num))
    if len(rest) > 1:
        raise IrreducibleCubicOrHigher(rest)
    vals: list[tuple[Scalar, int]] = [(Fraction(r), m) for r, m in roots.items()]
    for (b, c), m in quads.items():
        root = quadratic(Fraction(-b, 2), Fraction(1, 2), b * b - 4 * c)
        vals += [(root, m), (conjugate(root), m)]
    vals.sort(key=cmp_to_key(lambda u, v: compare(v[0], u[0])))
    return SpectrumReport(tuple(vals), tuple(cp))


def eigenprojection(a: ExactMatrix, spectrum: SpectrumReport, lam) -> AnyMatrix:
    """Orthogonal projection onto the lam-eigenspace of a, as the Lagrange product
    prod_{mu != lam} (a - mu I)/(lam - mu).

    Conjugate pairs (mu, mu') are multiplied together into the rational factor
    a^2 - (mu + mu')a + mu*mu' I, so only rational matrix products are formed; the
    result lives in Q or in Q(sqrt(d)) for the field of lam.
    """
    lam = as_scalar(lam)
    if spectrum.multiplicity(lam) == 0:
        raise ValueError(f"{lam} is not an eigenvalue")
    n = a.shape[0]
    eye = ExactMatrix.identity(n)
    numer = eye
    denom: Scalar = Fraction(1)
    seen = set()
    for mu in spectrum.distinct:
        if mu == lam or mu in seen:
            continue
        if isinstance(mu, QuadraticNumber):
            seen.update((mu, mu.conjugate()))
            if mu == conjugate(lam):
                continue  # lam's own conjugate is handled last
            t, nrm = mu.trace(), mu.norm()
            numer = numer @ (a @ a - a * t + eye * nrm)
            denom = denom * (lam * lam - lam * t + nrm)
        else:
            seen.add(mu)
            numer = numer @ a.add_scalar_identity(-mu)
            denom = denom * (lam - mu)
    if isinstance(lam, Fraction):
        return numer / denom
    # remaining factor (a - lam_bar I)/(lam - lam_bar)
    denom = denom * (lam - lam.conjugate())
    inv = 1 / denom
    m_part = numer @ a.add_scalar_identity(-lam.a)
    n_part = numer * lam.b
    return QuadMatrix(m_part, n_part, lam.d).scale(inv)


def eigenprojections(a: ExactMatrix, spectrum: SpectrumReport) -> dict:
    return {lam: eigenprojection(a, spectrum, lam) for lam in spectrum.distinct}


def mat_poly_eval(coeffs: Iterable, m: ExactMatrix) -> ExactMatrix:
    """Horner evaluation of a rational polynomial (ascending coefficients) at m."""
    if not m.is_square:
        raise ValueError("polynomial of a non-square matrix")
    coeffs = [Fraction(c) for c in coeffs]
    n = m.shape[0]
    acc = ExactMatrix.zeros(n)
    eye = ExactMatrix.identity(n)
    for c in reversed(coeffs):
        acc = acc @ m + eye * c
    return acc
