"""Strongly regular and strongly walk-regular graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IrreducibleCubicOrHigher
from .exact_matrix import ExactMatrix, char_poly, distinct_root_count, exact_spectrum
from .graphs import Graph, components, is_connected, regularity
from .scalars import Scalar, as_scalar, is_square, sqrt_rational

DEFAULT_L_MAX = 21


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        if not 0 < self.k < self.n - 1:
            raise ValueError(f"{self}: need 0 < k < n-1 (neither complete nor edgeless)")
        if self.k * (self.k - self.lam - 1) != (self.n - self.k - 1) * self.mu:
            raise ValueError(f"{self}: violates k(k-lambda-1) = (n-k-1)mu")

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)

    @property
    def discriminant(self) -> int:
        return (self.lam - self.mu) ** 2 + 4 * (self.k - self.mu)


def srg_recognize(g: Graph) -> SrgParams | None:
    """Parameters (n, k, lambda, mu) if common-neighbour counts depend only on
    whether a pair is equal, adjacent or non-adjacent."""
    a = g.adjacency
    n = g.n
    k = regularity(g)
    if k is None or k == 0 or k == n - 1:
        return None
    common = a @ a
    off = ~np.eye(n, dtype=bool)
    adj_vals = np.unique(common[(a == 1) & off])
    non_vals = np.unique(common[(a == 0) & off])
    if len(adj_vals) != 1 or len(non_vals) != 1:
        return None
    return SrgParams(n, k, int(adj_vals[0]), int(non_vals[0]))


def srg_eigenvalues(p: SrgParams) -> tuple[Scalar, Scalar]:
    """Restricted eigenvalues theta_+ > theta_- (roots of x^2 - (lambda-mu)x + (mu-k))."""
    root = sqrt_rational(p.discriminant)
    half = Fraction(1, 2)
    s = Fraction(p.lam - p.mu)
    return (s + root) * half, (s - root) * half


def srg_half_case(p: SrgParams) -> bool:
    """True when the restricted eigenvalues are irrational; that forces the
    conference-graph parameters (4mu+1, 2mu, mu-1, mu)."""
    if is_square(p.discriminant):
        return False
    mu = p.mu
    assert p.astuple() == (4 * mu + 1, 2 * mu, mu - 1, mu), p
    return True


@dataclass(frozen=True)
class SrgFamily:
    tag: str  # "K_mm", "K_mmm" or "C5"
    m: int


def srg_periodicity_class(p: SrgParams) -> SrgFamily | None:
    """Which of (2k,k,0,k), (3l,2l,l,2l), (5,2,0,1) the parameters match, if any."""
    n, k, lam, mu = p.astuple()
    if (n, lam, mu) == (2 * k, 0, k):
        return SrgFamily("K_mm", k)
    if lam >= 1 and (n, k, mu) == (3 * lam, 2 * lam, 2 * lam):
        return SrgFamily("K_mmm", lam)
    if (n, k, lam, mu) == (5, 2, 0, 1):
        return SrgFamily("C5", 1)
    return None


def is_strongly_l_walk_regular(g: Graph, ell: int) -> tuple[Fraction, Fraction, Fraction] | None:
    """(a, b, c) with A^ell = aI + bA + cJ, or None.

    The three unknowns are read off one diagonal entry, one adjacent pair and one
    non-adjacent pair; the candidate is then checked against every entry.
    """
    if ell < 2:
        raise ValueError("ell must be at least 2")
    a_mat = g.adjacency
    power = (ExactMatrix(a_mat) ** ell).num
    n = g.n
    off = ~np.eye(n, dtype=bool)
    adj_idx = np.argwhere(a_mat == 1)
    non_idx = np.argwhere((a_mat == 0) & off)
    c = int(power[tuple(non_idx[0])]) if len(non_idx) else 0
    b = int(power[tuple(adj_idx[0])]) - c if len(adj_idx) else 0
    a = int(power[0, 0]) - c
    expected = a * np.eye(n, dtype=object) + b * a_mat.astype(object) + c
    if not np.array_equal(power, expected):
        return None
    return Fraction(a), Fraction(b), Fraction(c)


def swr_eigenvalue_criterion(t1, t2, t3, ell: int) -> bool:
    """Exact test of (t2-t3)t1^l + (t3-t1)t2^l + (t1-t2)t3^l = 0."""
    t1, t2, t3 = as_scalar(t1), as_scalar(t2), as_scalar(t3)
    if len({t1, t2, t3}) != 3:
        raise ValueError("eigenvalues must be pairwise distinct")
    if ell < 3:
        raise ValueError("ell must be at least 3")
    total = (t2 - t3) * t1**ell + (t3 - t1) * t2**ell + (t1 - t2) * t3**ell
    return total == 0


EMPTY = "empty"
DISJOINT_COMPLETE = "disjoint-complete"
STRONGLY_REGULAR = "strongly-regular"
BIPARTITE_PLUS_ISOLATED = "disjoint-complete-bipartite+isolated"
GENUINE = "genuine"
NOT_SWR = "not-swr"


@dataclass(frozen=True)
class SwrClass:
    tag: str
    witness: object = None

    @property
    def is_swr(self) -> bool:
        return self.tag != NOT_SWR


def _is_complete_on(g: Graph, verts: list[int]) -> bool:
    return all(g.degree(v) == len(verts) - 1 for v in verts)


def _complete_bipartite_half(g: Graph, verts: list[int]) -> int | None:
    """m if the component on verts is K_{m,m}."""
    if len(verts) % 2:
        return None
    m = len(verts) // 2
    x = verts[0]
    side = {x} | {y for y in verts if y != x and not g.has_edge(x, y)}
    if len(side) != m:
        return None
    for v in verts:
        want = [u for u in verts if (u in side) != (v in side)]
        if sorted(g.neighbors(v)) != want:
            return None
    return m


def classify_swr(g: Graph, l_max: int = DEFAULT_L_MAX) -> SwrClass:
    if g.num_edges == 0:
        return SwrClass(EMPTY)
    comps = components(g)
    sizes = {len(c) for c in comps}
    if len(sizes) == 1 and all(_is_complete_on(g, c) for c in comps):
        return SwrClass(DISJOINT_COMPLETE, (len(comps), sizes.pop()))
    srg = srg_recognize(g)
    if srg is not None:
        return SwrClass(STRONGLY_REGULAR, srg)
    big = [c for c in comps if len(c) > 1]
    halves = {_complete_bipartite_half(g, c) for c in big}
    if len(halves) == 1 and None not in halves:
        return SwrClass(BIPARTITE_PLUS_ISOLATED, (len(big), halves.pop(), len(comps) - len(big)))
    if not is_connected(g) or regularity(g) is None:
        return SwrClass(NOT_SWR)
    a = ExactMatrix(g.adjacency)
    try:
        spec = exact_spectrum(a)
    except IrreducibleCubicOrHigher:
        spec = None
    if spec is not None:
        if len(spec.distinct) != 4:
            return SwrClass(NOT_SWR)
        _, t1, t2, t3 = spec.distinct
        for ell in range(3, l_max + 1, 2):
            if swr_eigenvalue_criterion(t1, t2, t3, ell):
                return SwrClass(GENUINE, ell)
        return SwrClass(NOT_SWR)
    # eigenvalues outside Q(sqrt D): fall back to the matrix definition
    if distinct_root_count(char_poly(a)) != 4:
        return SwrClass(NOT_SWR)
    for ell in range(3, l_max + 1, 2):
        if is_strongly_l_walk_regular(g, ell) is not None:
            return SwrClass(GENUINE, ell)
    return SwrClass(NOT_SWR)
