"""Exact analysis of perfect state transfer and periodicity for Grover walks on
regular graphs."""

from .errors import (
    FieldMismatch,
    GraphDomainError,
    GroverLabError,
    IrreducibleCubicOrHigher,
    ParseError,
    UnrecognizedAngle,
    UnsupportedGraph,
)
from .exact_matrix import ExactMatrix, char_poly, eigenprojection, eigenprojections, exact_spectrum
from .expr import construct
from .graph6 import parse_graph6, to_graph6
from .graphs import Graph
from .grover import build_operators, check_periodic, check_periodic_direct, check_periodic_spectral
from .pst import (
    algebraic_integer_filter,
    angle_certificate,
    chebyshev_matrix,
    eigenvalue_support,
    minimal_time_scan,
    pst_at_time,
    pst_via_conditions,
    strong_cospectrality,
)
from .spectrum_search import closed_walk_filter, enumerate_tables, feasible_rows, verify_candidate_graph
from .walk_regularity import classify_swr, is_strongly_l_walk_regular, srg_recognize

__version__ = "0.1.0"
