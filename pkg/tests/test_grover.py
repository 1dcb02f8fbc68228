from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from corpus import HALF_SPECTRUM, SRG, graph, regular_connected, supported
from grover_lab.errors import UnsupportedGraph
from grover_lab.exact_matrix import ExactMatrix, exact_spectrum
from grover_lab.graphs import Graph, arcs, complete, complete_multipartite, cycle
from grover_lab.grover import (
    build_operators,
    check_periodic,
    check_periodic_direct,
    check_periodic_spectral,
    genuine_spectrum_periodic,
    spectrum_period,
)

F = Fraction


def loop_operator(g: Graph) -> list[list[Fraction]]:
    """U entry by entry from the arc definition."""
    arc_list = arcs(g)
    k = int(g.adjacency[0].sum())
    out = []
    for a in arc_list:
        row = []
        for b in arc_list:
            v = F(2, k) if a.origin == b.terminus else F(0)
            if a.origin == b.terminus and a.terminus == b.origin:
                v -= 1
            row.append(v)
        out.append(row)
    return out


def float_period(g: Graph, tau_max: int) -> int | None:
    u = np.array(loop_operator(g), dtype=float)
    cur = np.eye(len(u))
    for t in range(1, tau_max + 1):
        cur = cur @ u
        if np.allclose(cur, np.eye(len(u)), atol=1e-7):
            return t
    return None


def test_k2():
    ops = build_operators(complete(2))
    assert ops.U.to_fractions() == [[0, 1], [1, 0]]
    v = check_periodic_direct(ops)
    assert v.periodic and v.period == 2


@pytest.mark.parametrize("expr", ["cycle(5)", "complete(4)", "hamming(3,2)", "complete_multipartite(2,2,2)", "hamming(2,3)"])
def test_operator_matches_loop_definition(expr):
    g = graph(expr)
    assert build_operators(g).U.to_fractions() == loop_operator(g)


@pytest.mark.parametrize("expr", [e for e in regular_connected() if 2 * graph(e).num_edges <= 200])
def test_operator_structure(expr):
    ops = build_operators(graph(expr))
    u, k = ops.U, ops.k
    m = len(ops.arcs)
    assert u.T @ u == ExactMatrix.identity(m)
    assert u == ops.shift() @ ops.coin()
    d0 = ops.terminus_incidence()
    assert d0 @ d0.T == ExactMatrix.identity(ops.graph.n) * k
    assert ops.P == (d0 @ ops.shift() @ d0.T) * F(1, k)


def test_complement_h32_entries():
    ops = build_operators(graph("complement(hamming(3,2))"))
    assert ops.k == 4
    vals = {v for row in ops.U.to_fractions() for v in row}
    assert vals <= {F(0), F(1, 2), F(-1, 2)}


def test_operators_reject_bad_graphs():
    with pytest.raises(UnsupportedGraph):
        build_operators(Graph(np.kron(np.eye(2, dtype=int), cycle(3).adjacency)))
    with pytest.raises(UnsupportedGraph):
        build_operators(complete_multipartite(1, 2))


def test_json_dump():
    ops = build_operators(cycle(3))
    data = json.loads(ops.to_json())
    assert data["arcs"][0] == [0, 1]
    assert len(data["U"]) == 6
    assert data["P"][0] == ["0", "1/2", "1/2"]


# --- periodicity ---------------------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 13))
def test_cycle_period(n):
    v = check_periodic(cycle(n))
    assert v.periodic and v.period == n


@pytest.mark.parametrize("expr", ["complete(4)", "hamming(3,2)", "cycle(5)", "complete_multipartite(2,2)", "complete_multipartite(3,3)", "complete_multipartite(2,2,2)", "complete_multipartite(1,1,1)", "complement(line(complete(5)))"])
def test_direct_matches_float_oracle(expr):
    g = graph(expr)
    v = check_periodic_direct(build_operators(g), 24)
    assert v.period == float_period(g, 24)


def test_petersen_not_periodic():
    v = check_periodic(graph("complement(line(complete(5)))"))
    assert not v.periodic and v.method == "direct"


def test_sieve_never_hides_a_period():
    # periods up to 24 on cycles: the modular sieve must let every true t through
    for n in (3, 8, 12, 24):
        assert check_periodic_direct(build_operators(cycle(n)), 24).period == n


@pytest.mark.parametrize("expr", [e for e in SRG + HALF_SPECTRUM if 2 * graph(e).num_edges <= 600])
def test_direct_and_spectral_agree(expr):
    g = graph(expr)
    spectral = check_periodic_spectral(g)
    direct = check_periodic_direct(build_operators(g), 24)
    assert spectral.periodic == direct.periodic
    if direct.periodic:
        assert spectral.period == direct.period


@pytest.mark.parametrize("expr", [e for e in HALF_SPECTRUM if 2 * graph(e).num_edges <= 300])
def test_half_spectrum_period_twelve(expr):
    ops = build_operators(graph(expr))
    assert ops.U ** 12 == ExactMatrix.identity(len(ops.arcs))
    assert check_periodic_direct(ops).period == 12


@pytest.mark.parametrize("expr", HALF_SPECTRUM)
def test_half_spectrum_spectral_route(expr):
    v = check_periodic_spectral(graph(expr))
    assert v.periodic and v.period == 12


@pytest.mark.parametrize("expr", [e for e in regular_connected() if supported(e) and 2 * graph(e).num_edges <= 300])
def test_direct_period_matches_angle_period(expr):
    g = graph(expr)
    v = check_periodic(g)
    assert v.method == "direct"
    assert v.period == spectrum_period(g, exact_spectrum(ExactMatrix(g.adjacency)))


def test_genuine_spectrum_rule():
    assert genuine_spectrum_periodic(4, [2, 0, -2])
    assert genuine_spectrum_periodic(6, [F(3), F(0), F(-3)])
    assert not genuine_spectrum_periodic(4, [2, -2, -4])  # (k/2, -k/2, -k)
    assert not genuine_spectrum_periodic(6, [2, 0, -2])


def test_spectral_route_rejects_non_swr():
    with pytest.raises(UnsupportedGraph):
        check_periodic_spectral(cycle(6))
