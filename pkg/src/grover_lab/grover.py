"""Grover walk operators and periodicity."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angles import spectral_period
from .errors import UnsupportedGraph
from .exact_matrix import ExactMatrix, exact_spectrum, int_matmul
from .graphs import Arc, Graph, arcs, basic_predicates
from .scalars import as_scalar, format_scalar
from .walk_regularity import (
    GENUINE,
    classify_swr,
    srg_periodicity_class,
    srg_recognize,
)

DIRECT_TAU_MAX = 120
DIRECT_ARC_LIMIT = 300


@dataclass(frozen=True)
class WalkOperators:
    graph: Graph
    arcs: tuple[Arc, ...]
    U: ExactMatrix
    P: ExactMatrix
    k: int

    @property
    def index(self) -> dict[Arc, int]:
        return {a: i for i, a in enumerate(self.arcs)}

    def shift(self) -> ExactMatrix:
        """R: a -> a^{-1}."""
        m = len(self.arcs)
        idx = self.index
        r = np.zeros((m, m), dtype=np.int64)
        for i, a in enumerate(self.arcs):
            r[i, idx[a.inverse()]] = 1
        return ExactMatrix(r)

    def terminus_incidence(self) -> ExactMatrix:
        """D0 with (D0)_{x,a} = [t(a) = x]; the boundary is d = D0 / sqrt(k)."""
        d0 = np.zeros((self.graph.n, len(self.arcs)), dtype=np.int64)
        for i, a in enumerate(self.arcs):
            d0[a.terminus, i] = 1
        return ExactMatrix(d0)

    def coin(self) -> ExactMatrix:
        """2 d^* d - I, which is rational: (d^* d)_{a,b} = [t(a) = t(b)] / k."""
        d0 = self.terminus_incidence()
        return d0.T @ d0 * Fraction(2, self.k) - ExactMatrix.identity(len(self.arcs))

    def to_json(self) -> str:
        def mat(m: ExactMatrix):
            return [[str(m.entry(i, j)) for j in range(m.shape[1])] for i in range(m.shape[0])]

        return json.dumps({
            "graph": self.graph.label,
            "arcs": [list(a) for a in self.arcs],
            "U": mat(self.U),
            "P": mat(self.P),
        })


def build_operators(g: Graph) -> WalkOperators:
    """U_{a,b} = (2/k)[o(a) = t(b)] - [a = b^{-1}] and P = A/k."""
    pred = basic_predicates(g)
    if not pred.connected:
        raise UnsupportedGraph(f"{g.label or 'graph'} is not connected")
    if pred.regular is None or pred.regular < 1:
        raise UnsupportedGraph(f"{g.label or 'graph'} is not regular of positive degree")
    k = pred.regular
    arc_list = tuple(arcs(g))
    origin = np.array([a.origin for a in arc_list])
    terminus = np.array([a.terminus for a in arc_list])
    ku = 2 * (origin[:, None] == terminus[None, :]).astype(np.int64)
    inv = (origin[:, None] == terminus[None, :]) & (terminus[:, None] == origin[None, :])
    ku -= k * inv.astype(np.int64)
    return WalkOperators(g, arc_list, ExactMatrix(ku, k), ExactMatrix(g.adjacency, k), k)


@dataclass(frozen=True)
class PeriodicityVerdict:
    periodic: bool
    period: int | None
    method: str  # "direct" or "spectral"
    reason: str = ""


_SIEVE_PRIME = 33_554_393  # below 2**25, so an int64 product row stays exact for up to 8191 arcs


def _exact_power_is_identity(num: np.ndarray, den: int, t: int) -> bool:
    m = num.shape[0]
    result, base, e = None, num, t
    while e:
        if e & 1:
            result = base if result is None else int_matmul(result, base)
        e >>= 1
        if e:
            base = int_matmul(base, base)
    return bool(np.array_equal(result, np.eye(m, dtype=object) * den ** t))


def check_periodic_direct(ops: WalkOperators, tau_max: int = DIRECT_TAU_MAX) -> PeriodicityVerdict:
    """Smallest t <= tau_max with U^t = I.

    Powers of the integer numerator kU are sieved modulo a prime (U^t = I forces
    (kU)^t = k^t I mod p); each surviving t is confirmed by exact powering.
    """
    num, den = ops.U.num, ops.U.den
    m = num.shape[0]
    if m > 8191:
        raise ValueError("too many arcs for the direct route")
    p = _SIEVE_PRIME
    base = np.mod(num.astype(np.int64), p)
    cur = base.copy()
    scale = den % p
    diag = np.arange(m)
    for t in range(1, tau_max + 1):
        off = cur.copy()
        off[diag, diag] = 0
        if not off.any() and np.all(cur[diag, diag] == scale) and _exact_power_is_identity(num, den, t):
            return PeriodicityVerdict(True, t, "direct")
        cur = np.mod(cur @ base, p)
        scale = scale * den % p
    return PeriodicityVerdict(False, None, "direct", f"no period up to {tau_max}")


def _period_from_adjacency_spectrum(g: Graph, k: int, eigenvalues) -> int | None:
    p_eigs = [as_scalar(v) / k for v in eigenvalues]
    return spectral_period(p_eigs, g.num_edges > g.n)


def genuine_spectrum_periodic(k: int, thetas) -> bool:
    """For a genuine strongly walk-regular spectrum {k, t1, t2, t3} the walk is
    periodic exactly when (t1, t2, t3) = (k/2, 0, -k/2)."""
    t = tuple(sorted((as_scalar(x) for x in thetas), reverse=True))
    return t == (Fraction(k, 2), Fraction(0), Fraction(-k, 2))


def check_periodic_spectral(g: Graph) -> PeriodicityVerdict:
    """Periodicity from the classification of connected strongly regular and
    genuine strongly walk-regular graphs."""
    pred = basic_predicates(g)
    if not pred.connected or pred.regular is None:
        raise UnsupportedGraph("spectral periodicity needs a connected regular graph")
    k = pred.regular
    srg = srg_recognize(g)
    if srg is not None:
        family = srg_periodicity_class(srg)
        if family is None:
            return PeriodicityVerdict(False, None, "spectral", f"srg{srg.astuple()} outside the periodic families")
        spec = exact_spectrum(ExactMatrix(g.adjacency))
        period = _period_from_adjacency_spectrum(g, k, spec.distinct)
        return PeriodicityVerdict(True, period, "spectral", f"{family.tag} family")
    cls = classify_swr(g)
    if cls.tag != GENUINE:
        raise UnsupportedGraph(f"{g.label or 'graph'} is neither strongly regular nor genuinely strongly walk-regular")
    spec = exact_spectrum(ExactMatrix(g.adjacency))
    thetas = spec.distinct[1:]
    if not genuine_spectrum_periodic(k, thetas):
        shown = ", ".join(format_scalar(t) for t in thetas)
        return PeriodicityVerdict(False, None, "spectral", f"restricted spectrum ({shown}) is not (k/2, 0, -k/2)")
    period = _period_from_adjacency_spectrum(g, k, spec.distinct)
    return PeriodicityVerdict(True, period, "spectral", "genuine {k, k/2, 0, -k/2}")


def check_periodic(g: Graph, tau_max: int = DIRECT_TAU_MAX) -> PeriodicityVerdict:
    """Direct powering for small graphs, the spectral route otherwise."""
    if 2 * g.num_edges <= DIRECT_ARC_LIMIT:
        return check_periodic_direct(build_operators(g), tau_max)
    try:
        return check_periodic_spectral(g)
    except UnsupportedGraph:
        build_operators(g)  # connectivity / regularity errors surface here
    # any graph whose eigenvalues have degree <= 2: read the period off the spectrum
    period = spectrum_period(g, exact_spectrum(ExactMatrix(g.adjacency)))
    if period is None:
        return PeriodicityVerdict(False, None, "spectral", "an eigenvalue of P has no rational angle")
    return PeriodicityVerdict(True, period, "spectral", "angles of the P-spectrum")


def spectrum_period(g: Graph, spectrum) -> int | None:
    """Period read off an exact adjacency spectrum, or None when some P-eigenvalue
    has no rational angle (the walk is then not periodic)."""
    k = basic_predicates(g).regular
    if k is None:
        raise UnsupportedGraph("graph is not regular")
    return _period_from_adjacency_spectrum(g, k, spectrum.distinct)

