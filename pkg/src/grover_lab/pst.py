"""Perfect state transfer between vertex-type states of the Grover walk.

Two independent routes:

* Chebyshev: PST from x to y at time tau iff T_tau(P) e_x = e_y.
* Spectral: E_l e_x = s_l E_l e_y for every eigenvalue l of P (s_l = +-1), and each
  l in the support of x is cos(j pi / tau) with j even when s_l = +1, odd when -1.

Both are exact; the scan reports a pair only after both agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .angles import AngleCertificate, angle_certificate
from .errors import IrreducibleCubicOrHigher, UnrecognizedAngle, UnsupportedGraph
from .exact_matrix import (
    ExactMatrix,
    SpectrumReport,
    eigenprojections,
    exact_spectrum,
    int_matmul,
)
from .graphs import Graph, basic_predicates
from .grover import check_periodic, spectrum_period
from .scalars import Scalar, format_scalar, is_algebraic_integer

DEFAULT_TAU_MAX = 60

__all__ = [
    "angle_certificate",
    "AngleCertificate",
    "chebyshev_matrix",
    "pst_at_time",
    "eigenvalue_support",
    "strong_cospectrality",
    "pst_via_conditions",
    "algebraic_integer_filter",
    "minimal_time_scan",
    "SupportSet",
    "ConditionVerdict",
    "FilterVerdict",
    "PstPair",
    "PstReport",
    "spectral_data",
]


# --- Chebyshev route ----------------------------------------------------------------


def _scaled_chebyshev(num: np.ndarray, den: int, upto: int):
    """Yield (m, S_m, den^m) with T_m(num/den) = S_m / den^m, for m = 0..upto.

    S_0 = I, S_1 = num, S_{m+1} = 2 num S_m - den^2 S_{m-1}: all integer.
    """
    n = num.shape[0]
    prev = np.eye(n, dtype=np.int64)
    yield 0, prev, 1
    if upto < 1:
        return
    cur = np.array(num)
    yield 1, cur, den
    d2 = den * den
    scale = den
    for m in range(2, upto + 1):
        step = int_matmul(cur, num)
        nxt = _combine(step, prev, d2)
        prev, cur = cur, nxt
        scale *= den
        yield m, cur, scale


def _combine(step: np.ndarray, prev: np.ndarray, d2: int) -> np.ndarray:
    big = max(int(np.abs(step).max(initial=0)), 1) * 2 + max(int(np.abs(prev).max(initial=0)), 1) * d2
    if step.dtype != object and prev.dtype != object and big < 2**62:
        return 2 * step - d2 * prev
    return 2 * step.astype(object) - prev.astype(object) * d2


def chebyshev_matrix(p: ExactMatrix, tau: int) -> ExactMatrix:
    """T_tau(P) by the three-term recurrence."""
    if not p.is_square:
        raise ValueError("P must be square")
    if tau < 0:
        raise ValueError("tau must be non-negative")
    for m, s, scale in _scaled_chebyshev(p.num, p.den, tau):
        if m == tau:
            return ExactMatrix(s, scale)
    raise AssertionError("unreachable")


def _transfer_targets(s: np.ndarray, scale: int, sources) -> list[tuple[int, int]]:
    """(x, y) with column x of s equal to scale * e_y, y != x."""
    out = []
    for x in sources:
        col = s[:, x]
        nz = np.flatnonzero(col)
        if len(nz) == 1 and nz[0] != x and col[nz[0]] == scale:
            out.append((x, int(nz[0])))
    return out


def _require_walkable(g: Graph) -> int:
    pred = basic_predicates(g)
    if not pred.connected:
        raise UnsupportedGraph(f"{g.label or 'graph'} is not connected")
    if pred.regular is None or pred.regular < 1:
        raise UnsupportedGraph(f"{g.label or 'graph'} is not regular of positive degree")
    return pred.regular


def pst_at_time(g: Graph, tau: int) -> list[tuple[int, int]]:
    """All ordered pairs x != y with T_tau(P) e_x = e_y."""
    if tau < 1:
        raise ValueError("tau must be at least 1")
    k = _require_walkable(g)
    for m, s, scale in _scaled_chebyshev(g.adjacency, k, tau):
        if m == tau:
            return _transfer_targets(s, scale, range(g.n))
    raise AssertionError("unreachable")


# --- spectral route -------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralData:
    k: int
    spectrum: SpectrumReport  # of A
    projections: dict  # A-eigenvalue -> E

    def p_value(self, theta: Scalar) -> Scalar:
        return theta / self.k

    @property
    def p_spectrum(self) -> tuple[Scalar, ...]:
        return tuple(self.p_value(t) for t in self.spectrum.distinct)


@lru_cache(maxsize=64)
def spectral_data(g: Graph) -> SpectralData:
    """Exact spectrum and eigenprojections of A (cached per adjacency matrix)."""
    k = _require_walkable(g)
    a = ExactMatrix(g.adjacency)
    spec = exact_spectrum(a)
    return SpectralData(k, spec, eigenprojections(a, spec))


@dataclass(frozen=True)
class SupportSet:
    vertex: int
    eigenvalues: tuple[Scalar, ...]  # eigenvalues of P, descending

    def __contains__(self, lam) -> bool:
        return lam in self.eigenvalues

    def __len__(self) -> int:
        return len(self.eigenvalues)


def eigenvalue_support(g: Graph, x: int) -> SupportSet:
    sd = spectral_data(g)
    vals = tuple(sd.p_value(t) for t in sd.spectrum.distinct if not sd.projections[t].column_is_zero(x))
    return SupportSet(x, vals)


def strong_cospectrality(g: Graph, x: int, y: int) -> dict[Scalar, int] | None:
    """{lambda: sign} with E e_x = sign * E e_y for every eigenprojection, else None.
    Keys are eigenvalues of P; zero columns get sign +1."""
    if x == y:
        raise ValueError("x and y must differ")
    sd = spectral_data(g)
    signs = {}
    for t in sd.spectrum.distinct:
        rel = sd.projections[t].column_relation(x, y)
        if rel is None:
            return None
        signs[sd.p_value(t)] = rel
    return signs


@dataclass(frozen=True)
class ConditionVerdict:
    transfers: bool
    signs: dict | None = None
    angles: dict = field(default_factory=dict)  # lambda -> j
    reason: str = ""


def pst_via_conditions(g: Graph, x: int, y: int, tau: int) -> ConditionVerdict:
    if x == y:
        raise ValueError("x and y must differ")
    if tau < 1:
        raise ValueError("tau must be at least 1")
    signs = strong_cospectrality(g, x, y)
    if signs is None:
        return ConditionVerdict(False, reason="not strongly cospectral")
    angles = {}
    for lam in eigenvalue_support(g, x).eigenvalues:
        try:
            cert = angle_certificate(lam, tau)
        except UnrecognizedAngle:
            return ConditionVerdict(False, signs, angles, f"{format_scalar(lam)} has no rational angle")
        if cert is None:
            return ConditionVerdict(False, signs, angles, f"{format_scalar(lam)} is not cos(j pi/{tau})")
        want = 0 if signs[lam] == 1 else 1
        if cert.parity != want:
            return ConditionVerdict(False, signs, angles, f"parity of j={cert.j} clashes with sign at {format_scalar(lam)}")
        angles[lam] = cert.j
    return ConditionVerdict(True, signs, angles)


# --- necessary-condition filter ---------------------------------------------------------


@dataclass(frozen=True)
class FilterVerdict:
    passes: bool
    failing: Scalar | None = None
    vertex: int | None = None


def algebraic_integer_filter(g: Graph, vertex: int | None = None) -> FilterVerdict:
    """2*lambda must be an algebraic integer for every lambda in the support of a
    PST source.  With vertex=None every eigenvalue of P is tested."""
    if vertex is None:
        lams = spectral_data(g).p_spectrum
    else:
        lams = eigenvalue_support(g, vertex).eigenvalues
    for lam in lams:
        if not is_algebraic_integer(2 * lam):
            return FilterVerdict(False, lam, vertex)
    return FilterVerdict(True, None, vertex)


# --- scan --------------------------------------------------------------------------------


@dataclass(frozen=True)
class PstPair:
    x: int
    y: int
    tau: int
    signs: dict
    angles: dict


@dataclass(frozen=True)
class PstReport:
    graph: str
    spectrum: SpectrumReport | None
    filter: FilterVerdict | None
    periodic: bool | None
    period: int | None
    checked_times: tuple[int, ...]
    sources: tuple[int, ...]
    pairs: tuple[PstPair, ...]

    @property
    def short_circuited(self) -> bool:
        return not self.checked_times

    def to_dict(self) -> dict:
        def lam_map(m):
            return {format_scalar(k): v for k, v in m.items()}

        filt = None
        if self.filter is not None:
            filt = {"result": "pass" if self.filter.passes else "fail"}
            if not self.filter.passes:
                filt["failing"] = format_scalar(self.filter.failing)
        return {
            "graph": self.graph,
            "spectrum": str(self.spectrum) if self.spectrum is not None else None,
            "filter": filt,
            "periodic": self.periodic,
            "period": self.period,
            "checked_times": list(self.checked_times),
            "pst": [
                {"x": p.x, "y": p.y, "tau": p.tau, "signs": lam_map(p.signs), "angles": lam_map(p.angles)}
                for p in self.pairs
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _is_half_spectrum(k: int, spec: SpectrumReport) -> bool:
    return spec.distinct == (Fraction(k), Fraction(k, 2), Fraction(0), Fraction(-k, 2))


def minimal_time_scan(g: Graph, tau_max: int = DEFAULT_TAU_MAX) -> PstReport:
    """Minimal PST time for every ordered pair.

    Sources whose support fails the algebraic-integer filter are dropped first.
    Spectrum {k, k/2, 0, -k/2} needs only tau in {6, 12}; otherwise tau runs up to
    tau_max, or up to the walk's period when that is smaller.
    """
    if tau_max < 1:
        raise ValueError("tau_max must be at least 1")
    k = _require_walkable(g)
    try:
        sd = spectral_data(g)
    except IrreducibleCubicOrHigher:
        sd = None

    if sd is None:
        verdict = None
        spec = None
        sources = tuple(range(g.n))
        try:
            pv = check_periodic(g)
            periodic, period = pv.periodic, pv.period
        except UnsupportedGraph:
            periodic, period = None, None
    else:
        spec = sd.spectrum
        period = spectrum_period(g, spec)
        periodic = period is not None
        failed = []
        keep = []
        for x in range(g.n):
            v = algebraic_integer_filter(g, x)
            (keep if v.passes else failed).append((x, v))
        sources = tuple(x for x, _ in keep)
        verdict = failed[0][1] if failed else FilterVerdict(True)

    if not sources:
        times: tuple[int, ...] = ()
    elif sd is not None and _is_half_spectrum(k, spec):
        times = (6, 12)
    else:
        top = tau_max if period is None else min(tau_max, period)
        times = tuple(range(1, top + 1))

    best: dict[tuple[int, int], int] = {}
    if times:
        wanted = set(times)
        for m, s, scale in _scaled_chebyshev(g.adjacency, k, max(times)):
            if m in wanted:
                for pair in _transfer_targets(s, scale, sources):
                    best.setdefault(pair, m)

    pairs = []
    for (x, y), tau in sorted(best.items()):
        if sd is None:
            pairs.append(PstPair(x, y, tau, {}, {}))
            continue
        cond = pst_via_conditions(g, x, y, tau)
        if not cond.transfers:
            raise AssertionError(f"Chebyshev and spectral criteria disagree on {x}->{y} at {tau}: {cond.reason}")
        pairs.append(PstPair(x, y, tau, cond.signs, cond.angles))
    return PstReport(g.label, spec, verdict, periodic, period, times, sources, tuple(pairs))
