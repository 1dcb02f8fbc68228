from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import graph
from grover_lab.exact_matrix import ExactMatrix, exact_spectrum
from grover_lab.graphs import count_quadrangles, count_triangles_through, cycle
from grover_lab.spectrum_search import (
    TSV_COLUMNS,
    FeasibleRow,
    closed_walk_count,
    closed_walk_filter,
    coclique_hints,
    compare_with_golden,
    enumerate_tables,
    existence_expression,
    feasible_rows,
    hoffman_holds,
    load_golden,
    to_json_lines,
    to_markdown,
    to_tsv,
    verify_candidate_graph,
)

F = Fraction


def brute_rows(k: int) -> list[tuple]:
    """Every integer n, every condition in rational arithmetic, no stepping."""
    out = []
    for n in range(1, 3 * k**3 // 4 + 1):
        alpha, beta, gamma = F(2 * n, k) - 3, n + 3 - F(4 * n, k), F(2 * n, k) - 1
        if any(v.denominator != 1 or v <= 0 for v in (alpha, beta, gamma)):
            continue
        if not (2 * k <= n <= F(3, 4) * k**3):
            continue
        t_x = F(3 * k**3, 8 * n)
        q = F(k, 32) * (3 * k**3 + n * k**2 - 8 * n * k + 4 * n)
        q_x = 4 * q / n
        if any(v.denominator != 1 for v in (t_x, q, q_x)) or q < 0:
            continue
        out.append((k, n, int(alpha), int(beta), int(gamma), int(t_x), int(q), int(q_x)))
    return out


@pytest.mark.parametrize("k", range(4, 21, 2))
def test_rows_match_brute_force(k):
    got = [(r.k, r.n, r.alpha, r.beta, r.gamma, r.t_x, r.q, r.q_x) for r in feasible_rows(k)]
    assert got == brute_rows(k)


def test_row_examples():
    assert [r.n for r in feasible_rows(4)] == [8, 12]
    assert [r.n for r in feasible_rows(6)] == [27, 81]
    k20 = feasible_rows(20)
    assert len(k20) == 15 and k20[0].n == 40 and k20[-1].n == 3000


def test_per_k_counts():
    rows = enumerate_tables(20)
    assert len(rows) == 58
    counts = Counter(r.k for r in rows)
    assert [counts[k] for k in range(4, 21, 2)] == [2, 2, 7, 4, 9, 4, 11, 4, 15]
    assert len(enumerate_tables(4)) == 2


def test_spectrum_string():
    row = next(r for r in feasible_rows(8) if r.n == 32)
    assert row.spectrum_string == "{[8]^1, [4]^5, [0]^19, [-4]^7}"


def test_bad_valency():
    for k in (2, 3, 5, 0):
        with pytest.raises(ValueError):
            feasible_rows(k)
    with pytest.raises(ValueError):
        enumerate_tables(2)


def test_every_row_satisfies_invariants():
    for row in enumerate_tables(20):
        assert row.check() == []


def test_check_reports_corruption():
    row = feasible_rows(4)[0]
    broken = FeasibleRow(row.k, row.n, row.alpha + 1, row.beta, row.gamma, row.t_x + 1, row.q, row.q_x)
    problems = broken.check()
    assert "multiplicities do not sum to n" in problems
    assert "t_x != 3k^3/(8n)" in problems


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30).map(lambda h: 2 * h))
def test_rows_beyond_the_table_are_sound(k):
    for r in feasible_rows(k):
        assert r.check() == []
        assert closed_walk_count(r, 1) == 0
        assert closed_walk_count(r, 2) == k
        assert closed_walk_count(r, 3) == 2 * r.t_x


def test_closed_walks():
    row = feasible_rows(4)[0]  # (4, 8)
    assert closed_walk_count(row, 3) == 6 == 2 * row.t_x
    assert closed_walk_count(row, 2) == 4
    assert closed_walk_filter(row).kept
    bogus = FeasibleRow(4, 10, 2, 3, 4, 0, 0, 0)
    # c_2 = 40/10 = 4 survives, c_3 = 48/10 does not
    v = closed_walk_filter(bogus, 5)
    assert not v.kept and v.eliminated_at == 3
    with pytest.raises(ValueError):
        closed_walk_filter(row, 0)


def test_closed_walk_filter_keeps_every_row():
    assert all(closed_walk_filter(r, 20).kept for r in enumerate_tables(20))


def test_closed_walks_match_graph():
    g = graph("coclique(line(hamming(3,2)),2)")
    row = next(r for r in feasible_rows(8) if r.n == 24)
    a = ExactMatrix(g.adjacency)
    for r in range(1, 8):
        assert (a ** r).entry(0, 0) == closed_walk_count(row, r)


def test_coclique_hints():
    rows = enumerate_tables(20)
    by_kn = {(r.k, r.n): r for r in rows}
    assert coclique_hints(by_kn[(8, 16)], by_kn) == [(4, 8, 2)]
    assert coclique_hints(by_kn[(12, 54)], by_kn) == [(6, 27, 2)]
    assert coclique_hints(by_kn[(4, 8)], by_kn) == []


# --- golden transcription -----------------------------------------------------------------


def test_golden_matches_enumeration():
    golden = load_golden()
    assert len(golden) == 58
    assert compare_with_golden(enumerate_tables(20), golden, 20) == []
    assert Counter(g.status for g in golden) == {"exists": 17, "open": 40, "excluded-by-citation": 1}
    (cited,) = [g for g in golden if g.status == "excluded-by-citation"]
    assert (cited.k, cited.n) == (10, 25)


def test_golden_comparison_reports_differences():
    golden = load_golden()
    rows = enumerate_tables(20)
    assert compare_with_golden(rows[1:], golden, 20) == ["missing row k=4 n=8"]
    assert compare_with_golden(rows, golden[1:], 20) == ["unexpected row k=4 n=8"]


def test_existence_expressions():
    assert existence_expression(r"\overline{H(3,2)}") == "complement(hamming(3,2))"
    assert existence_expression(r"L(H(3,2)) \otimes J_3") == "coclique(line(hamming(3,2)),3)"
    assert existence_expression("?") is None


@pytest.mark.parametrize("g", [g for g in load_golden() if g.construction], ids=lambda g: f"{g.k}-{g.n}")
def test_constructible_rows_verify(g):
    row = next(r for r in feasible_rows(g.k) if r.n == g.n)
    graph_ = graph(g.construction)
    v = verify_candidate_graph(graph_, row)
    assert v.ok, v.mismatches
    assert {count_triangles_through(graph_, x) for x in range(graph_.n)} == {F(3 * g.k**3, 8 * g.n)}
    assert count_quadrangles(graph_).total == row.q


def test_verify_candidate_mismatches():
    row = next(r for r in feasible_rows(6) if r.n == 81)
    v = verify_candidate_graph(graph("hamming(3,3)"), row)
    assert not v.ok and v.mismatches[0].startswith("n:")
    row8 = feasible_rows(4)[0]
    v = verify_candidate_graph(graph("hamming(3,2)"), row8)
    assert not v.ok and any(m.startswith("valency") for m in v.mismatches)
    row12 = feasible_rows(4)[1]
    v = verify_candidate_graph(graph("cartesian(cycle(4),complete(3))"), row12)
    assert not v.ok and any(m.startswith("spectrum") for m in v.mismatches)


def test_hoffman():
    assert hoffman_holds(graph("hamming(3,3)"), 6)
    assert not hoffman_holds(cycle(6), 2)


def test_hoffman_matches_spectrum():
    g = graph("line(hamming(3,2))")
    spec = exact_spectrum(ExactMatrix(g.adjacency))
    assert spec.distinct == (4, 2, 0, -2) and hoffman_holds(g, 4)


# --- emitters -----------------------------------------------------------------------------


def test_tsv():
    text = to_tsv(feasible_rows(4))
    lines = text.splitlines()
    assert lines[0].split("\t") == list(TSV_COLUMNS)
    assert lines[1] == "4\t8\t1\t3\t3\t3\t12\t6\t{[4]^1, [2]^1, [0]^3, [-2]^3}"


def test_json_lines():
    rows = feasible_rows(4)
    recs = [json.loads(line) for line in to_json_lines(rows).splitlines()]
    assert recs[1]["n"] == 12 and recs[1]["spectrum"] == "{[4]^1, [2]^3, [0]^3, [-2]^5}"


def test_markdown():
    md = to_markdown(enumerate_tables(10), load_golden())
    lines = md.splitlines()
    assert lines[0] == "| k | n | Spectrum | Existence | Comment |"
    assert "| 4 | 8 | {[4]^1, [2]^1, [0]^3, [-2]^3} | complement(hamming(3,2)) |  |" in lines
    assert any(line.startswith("| 10 | 25 |") and "| - |" in line for line in lines)
    assert any(line.startswith("| 6 | 81 |") and line.endswith("| q=0 |") for line in lines)
