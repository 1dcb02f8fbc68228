"""Feasible spectra {[k]^1, [k/2]^a, [0]^b, [-k/2]^c} for genuine strongly
walk-regular graphs, and checks of concrete graphs against them."""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .errors import IrreducibleCubicOrHigher
from .exact_matrix import ExactMatrix, exact_spectrum
from .graphs import Graph, basic_predicates, count_quadrangles, count_triangles_through

DEFAULT_R_MAX = 20


@dataclass(frozen=True)
class FeasibleRow:
    k: int
    n: int
    alpha: int
    beta: int
    gamma: int
    t_x: int
    q: int
    q_x: int

    @property
    def spectrum(self) -> tuple[tuple[int, int], ...]:
        h = self.k // 2
        return ((self.k, 1), (h, self.alpha), (0, self.beta), (-h, self.gamma))

    @property
    def spectrum_string(self) -> str:
        return "{" + ", ".join(f"[{v}]^{m}" for v, m in self.spectrum) + "}"

    def check(self) -> list[str]:
        """Violated invariants (empty when the row is sound)."""
        k, n = self.k, self.n
        bad = []
        if min(self.alpha, self.beta, self.gamma) < 1:
            bad.append("multiplicities must be positive")
        if Fraction(self.alpha) != Fraction(2 * n, k) - 3 or Fraction(self.beta) != n + 3 - Fraction(4 * n, k) \
                or Fraction(self.gamma) != Fraction(2 * n, k) - 1:
            bad.append("multiplicities disagree with n and k")
        if 1 + self.alpha + self.beta + self.gamma != n:
            bad.append("multiplicities do not sum to n")
        if not (2 * k <= n and 4 * n <= 3 * k**3):
            bad.append("n outside [2k, 3k^3/4]")
        if 8 * n * self.t_x != 3 * k**3:
            bad.append("t_x != 3k^3/(8n)")
        if 32 * self.q != k * (3 * k**3 + n * k * k - 8 * n * k + 4 * n):
            bad.append("q disagrees with the quadrangle formula")
        if n * self.q_x != 4 * self.q:
            bad.append("q_x != 4q/n")
        return bad


def _row_for(k: int, n: int) -> FeasibleRow | None:
    if (2 * n) % k or 2 * k > n or 4 * n > 3 * k**3:
        return None
    alpha, beta, gamma = 2 * n // k - 3, n + 3 - 4 * n // k, 2 * n // k - 1
    if min(alpha, beta, gamma) < 1:
        return None
    if (3 * k**3) % (8 * n):
        return None
    q32 = k * (3 * k**3 + n * k * k - 8 * n * k + 4 * n)
    if q32 % 32 or q32 < 0:
        return None
    q = q32 // 32
    if (4 * q) % n:
        return None
    return FeasibleRow(k, n, alpha, beta, gamma, 3 * k**3 // (8 * n), q, 4 * q // n)


def feasible_rows(k: int) -> list[FeasibleRow]:
    """Every n passing the four feasibility conditions, ascending."""
    if k < 4 or k % 2:
        raise ValueError(f"k must be even and at least 4, got {k}")
    # k | 2n  <=>  n is a multiple of k/2; 2k is one, so stepping from there is exact
    rows = (_row_for(k, n) for n in range(2 * k, 3 * k**3 // 4 + 1, k // 2))
    return [r for r in rows if r is not None]


def enumerate_tables(k_max: int) -> list[FeasibleRow]:
    if k_max < 4:
        raise ValueError("k_max must be at least 4")
    return [row for k in range(4, k_max + 1, 2) for row in feasible_rows(k)]


@dataclass(frozen=True)
class ClosedWalkVerdict:
    kept: bool
    eliminated_at: int | None = None


def closed_walk_count(row: FeasibleRow, r: int) -> Fraction:
    """(1/n) sum of lambda^r over the spectrum: closed r-walks at each vertex."""
    return sum(Fraction(v) ** r * m for v, m in row.spectrum) / row.n


def closed_walk_filter(row: FeasibleRow, r_max: int = DEFAULT_R_MAX) -> ClosedWalkVerdict:
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    for r in range(1, r_max + 1):
        c = closed_walk_count(row, r)
        if c.denominator != 1 or c < 0:
            return ClosedWalkVerdict(False, r)
    return ClosedWalkVerdict(True)


def coclique_hints(row: FeasibleRow, rows_by_kn: dict[tuple[int, int], FeasibleRow]) -> list[tuple[int, int, int]]:
    """(k', n', m) with row = (m k', m n') and (k', n') feasible: try X (x) J_m."""
    out = []
    for m in range(2, row.k // 4 + 1):
        if row.k % m == 0 and row.n % m == 0 and (row.k // m, row.n // m) in rows_by_kn:
            out.append((row.k // m, row.n // m, m))
    return out


# --- golden transcription and the existence column ---------------------------------


@dataclass(frozen=True)
class GoldenRow:
    k: int
    n: int
    spectrum_tex: str
    existence_tex: str
    status: str  # exists | open | excluded-by-citation
    comment: str

    @property
    def spectrum(self) -> tuple[tuple[int, int], ...]:
        return tuple((int(v), int(m)) for v, m in re.findall(r"\[(-?\d+)\]\^\{(\d+)\}", self.spectrum_tex))

    @property
    def construction(self) -> str | None:
        return existence_expression(self.existence_tex)


def load_golden() -> list[GoldenRow]:
    text = resources.files("grover_lab").joinpath("data/tables_golden.tsv").read_text()
    lines = text.splitlines()[1:]
    out = []
    for line in lines:
        k, n, spec, ex, status, comment = line.split("\t")
        out.append(GoldenRow(int(k), int(n), spec, ex, status, comment))
    return out


_BASES = {
    r"\overline{H(3,2)}": "complement(hamming(3,2))",
    "L(H(3,2))": "line(hamming(3,2))",
    "H(3,3)": "hamming(3,3)",
}


def existence_expression(tex: str) -> str | None:
    """Construction expression for an Existence entry, or None when the entry is a
    coset graph (no construction data) or not a graph at all."""
    m = re.fullmatch(r"(.*?)(?: \\otimes J_(\d+))?", tex.strip())
    base = _BASES.get(m.group(1))
    if base is None:
        return None
    return f"coclique({base},{m.group(2)})" if m.group(2) else base


def compare_with_golden(rows: list[FeasibleRow], golden: list[GoldenRow], k_max: int) -> list[str]:
    """Human-readable differences between computed rows and the transcription."""
    want = {(g.k, g.n): g for g in golden if g.k <= k_max}
    have = {(r.k, r.n): r for r in rows}
    diffs = []
    for key in sorted(set(want) | set(have)):
        if key not in have:
            diffs.append(f"missing row k={key[0]} n={key[1]}")
        elif key not in want:
            diffs.append(f"unexpected row k={key[0]} n={key[1]}")
        elif want[key].spectrum != have[key].spectrum:
            diffs.append(f"spectrum differs at k={key[0]} n={key[1]}: {have[key].spectrum_string} vs {want[key].spectrum_tex}")
    return diffs


# --- emitters ---------------------------------------------------------------------------

TSV_COLUMNS = ("k", "n", "alpha", "beta", "gamma", "t_x", "q", "q_x", "spectrum")


def to_tsv(rows: list[FeasibleRow]) -> str:
    out = ["\t".join(TSV_COLUMNS)]
    for r in rows:
        d = asdict(r)
        out.append("\t".join(str(d[c]) for c in TSV_COLUMNS[:-1]) + "\t" + r.spectrum_string)
    return "\n".join(out) + "\n"


def to_json_lines(rows: list[FeasibleRow]) -> str:
    return "".join(json.dumps({**asdict(r), "spectrum": r.spectrum_string}) + "\n" for r in rows)


def _existence_cell(g: GoldenRow | None) -> str:
    if g is None or g.status == "open":
        return "?"
    if g.status == "excluded-by-citation":
        return "-"
    return g.construction or "coset graph (construction data not included)"


def to_markdown(rows: list[FeasibleRow], golden: list[GoldenRow] | None = None) -> str:
    by_kn = {(g.k, g.n): g for g in golden or []}
    out = ["| k | n | Spectrum | Existence | Comment |", "|---|---|---|---|---|"]
    for r in rows:
        g = by_kn.get((r.k, r.n))
        comment = []
        if g is not None and g.status == "excluded-by-citation":
            comment.append("excluded by an external non-existence result")
        if g is not None and g.comment:
            comment.append(g.comment)
        out.append(f"| {r.k} | {r.n} | {r.spectrum_string} | {_existence_cell(g)} | {'; '.join(comment)} |")
    return "\n".join(out) + "\n"


# --- checking a concrete graph against a row -------------------------------------------


@dataclass(frozen=True)
class CandidateVerdict:
    ok: bool
    mismatches: tuple[str, ...]


def hoffman_holds(g: Graph, k: int) -> bool:
    """h(A) = (h(k)/n) J for h(x) = (x - k/2) x (x + k/2), checked on 4h."""
    a = g.adjacency.astype(object)
    a3 = a @ a @ a
    lhs = 4 * a3 - k * k * a  # 4 h(A)
    hk4 = 4 * k**3 - k**3  # 4 h(k)
    n = g.n
    if hk4 % n:
        return False
    return bool(np.all(lhs == hk4 // n))


def verify_candidate_graph(g: Graph, row: FeasibleRow) -> CandidateVerdict:
    bad = []
    if g.n != row.n:
        return CandidateVerdict(False, (f"n: graph has {g.n}, row has {row.n}",))
    pred = basic_predicates(g)
    if pred.regular != row.k:
        bad.append(f"valency: graph {pred.regular}, row {row.k}")
        return CandidateVerdict(False, tuple(bad))
    if not pred.connected:
        bad.append("graph is not connected")
    try:
        spec = exact_spectrum(ExactMatrix(g.adjacency))
        got = tuple((int(v), m) for v, m in spec.eigenvalues) if spec.is_integral else None
    except IrreducibleCubicOrHigher:
        got = None
    if got != row.spectrum:
        bad.append(f"spectrum: graph {got}, row {row.spectrum_string}")
    tri = {count_triangles_through(g, x) for x in range(g.n)}
    if tri != {row.t_x}:
        bad.append(f"t_x: graph {sorted(tri)}, row {row.t_x}")
    quads = count_quadrangles(g)
    if quads.total != row.q:
        bad.append(f"q: graph {quads.total}, row {row.q}")
    if set(quads.through) != {row.q_x}:
        bad.append(f"q_x: graph {sorted(set(quads.through))}, row {row.q_x}")
    if not hoffman_holds(g, row.k):
        bad.append("Hoffman polynomial identity fails")
    return CandidateVerdict(not bad, tuple(bad))
