"""Graphs shared by the test modules (all with at most 100 vertices)."""

from __future__ import annotations

from functools import lru_cache

from grover_lab.errors import IrreducibleCubicOrHigher
from grover_lab.exact_matrix import ExactMatrix, exact_spectrum
from grover_lab.expr import construct

PETERSEN = "complement(line(complete(5)))"
PETERSEN_G6 = "IheA@GUAo"

HALF_SPECTRUM = [  # spectrum {k, k/2, 0, -k/2}
    "complement(hamming(3,2))",
    "line(hamming(3,2))",
    "hamming(3,3)",
    "coclique(complement(hamming(3,2)),2)",
    "coclique(line(hamming(3,2)),2)",
    "coclique(complement(hamming(3,2)),3)",
    "coclique(line(hamming(3,2)),3)",
    "coclique(hamming(3,3),2)",
    "coclique(complement(hamming(3,2)),4)",
    "coclique(line(hamming(3,2)),4)",
    "coclique(hamming(3,3),3)",
    "coclique(complement(hamming(3,2)),5)",
    "coclique(line(hamming(3,2)),5)",
]

SRG = [
    "cycle(4)",
    "cycle(5)",
    PETERSEN,
    "hamming(2,3)",
    "hamming(2,4)",
    "line(complete(4))",
    "line(complete(5))",
    "line(complete(6))",
    "cay(13;1,3,4,9,10,12)",
    "complete_multipartite(2,2)",
    "complete_multipartite(3,3)",
    "complete_multipartite(4,4)",
    "complete_multipartite(5,5)",
    "complete_multipartite(2,2,2)",
    "complete_multipartite(3,3,3)",
    "complete_multipartite(4,4,4)",
    "complete_multipartite(2,2,2,2)",
    "complement(cartesian(complete(3),complete(3)))",
]

OTHER_REGULAR = [
    "cycle(3)",
    "cycle(6)",
    "cycle(8)",
    "cycle(10)",
    "cycle(12)",
    "complete(2)",
    "complete(4)",
    "complete(5)",
    "hamming(3,2)",
    "hamming(4,2)",
    "cartesian(complete(2),complete(3))",
    "cartesian(cycle(4),complete(3))",
    "cay(8;1,2,6,7)",
    "cay(12;1,4,8,11)",
    "cay(10;1,3,7,9)",
]

IRREGULAR = [
    "complete_multipartite(1,2)",
    "complete_multipartite(1,3)",
    "complete_multipartite(2,3)",
]

CUBIC = ["cycle(7)", "cycle(9)", "cycle(11)"]  # spectra need degree >= 3

ALL = HALF_SPECTRUM + SRG + OTHER_REGULAR + IRREGULAR


@lru_cache(maxsize=None)
def graph(expr: str):
    return construct(expr)


def supported(expr: str) -> bool:
    try:
        exact_spectrum(ExactMatrix(graph(expr).adjacency))
    except IrreducibleCubicOrHigher:
        return False
    return True


def regular_connected() -> list[str]:
    return HALF_SPECTRUM + SRG + OTHER_REGULAR
