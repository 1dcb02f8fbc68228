"""Simple finite graphs with dense adjacency, the named families used throughout
the package, and brute-force combinatorial counts.

Vertex ids are dense 0-based integers.  Every constructor documents its vertex
order so adjacency (and the arc order derived from it) is reproducible.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import GraphDomainError


class Graph:
    """Immutable simple graph.  Equality ignores the label."""

    __slots__ = ("_adj", "label", "_neighbors")

    def __init__(self, adjacency, label: str = ""):
        adj = np.array(adjacency, dtype=np.int64)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise GraphDomainError("adjacency must be a non-empty square matrix")
        if not np.all((adj == 0) | (adj == 1)):
            raise GraphDomainError("adjacency entries must be 0 or 1")
        if not np.array_equal(adj, adj.T):
            raise GraphDomainError("adjacency must be symmetric")
        if np.any(np.diag(adj)):
            raise GraphDomainError("loops are not allowed")
        adj.setflags(write=False)
        self._adj = adj
        self.label = label
        self._neighbors = tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in adj)

    @classmethod
    def from_edges(cls, n: int, edges, label: str = "") -> "Graph":
        adj = np.zeros((n, n), dtype=np.int64)
        for u, v in edges:
            if u == v:
                raise GraphDomainError(f"loop at vertex {u}")
            adj[u, v] = adj[v, u] = 1
        return cls(adj, label)

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self._neighbors[x]

    def degree(self, x: int) -> int:
        return len(self._neighbors[x])

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self._adj[x, y])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._neighbors[u] if u < v]

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum()) // 2

    def relabel(self, label: str) -> "Graph":
        return Graph(self._adj, label)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self):
        return f"Graph({self.label or '<unnamed>'}, n={self.n}, m={self.num_edges})"

    def __reduce__(self):
        return (Graph, (self._adj, self.label))


class Arc(NamedTuple):
    origin: int
    terminus: int

    def inverse(self) -> "Arc":
        return Arc(self.terminus, self.origin)


def arcs(g: Graph) -> list[Arc]:
    """Symmetric arcs sorted by (origin, terminus)."""
    return [Arc(x, y) for x in range(g.n) for y in g.neighbors(x)]


# --- constructors ---------------------------------------------------------------


def cycle(n: int) -> Graph:
    """C_n with i ~ i+1 (mod n)."""
    if n < 3:
        raise GraphDomainError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle({n})")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphDomainError(f"complete needs n >= 1, got {n}")
    adj = np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)
    return Graph(adj, f"complete({n})")


def complete_multipartite(*parts: int) -> Graph:
    """Parts occupy consecutive vertex blocks in the given order."""
    if not parts or any(p < 1 for p in parts):
        raise GraphDomainError("complete_multipartite needs positive part sizes")
    block = np.repeat(np.arange(len(parts)), parts)
    adj = (block[:, None] != block[None, :]).astype(np.int64)
    return Graph(adj, f"complete_multipartite({','.join(map(str, parts))})")


def hamming(d: int, q: int) -> Graph:
    """H(d, q): words of {0..q-1}^d in lexicographic order, adjacent at distance 1."""
    if d < 1 or q < 2:
        raise GraphDomainError(f"hamming needs d >= 1 and q >= 2, got ({d},{q})")
    words = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.int64)
    dist = (words[:, None, :] != words[None, :, :]).sum(axis=2)
    return Graph((dist == 1).astype(np.int64), f"hamming({d},{q})")


def circulant(n: int, connection: Sequence[int]) -> Graph:
    """Cay(Z_n, S); S must be closed under negation and avoid 0."""
    if n < 1:
        raise GraphDomainError(f"cay needs n >= 1, got {n}")
    s = sorted({c % n for c in connection})
    if 0 in s:
        raise GraphDomainError("connection set must not contain 0")
    if set(s) != {(-c) % n for c in s}:
        raise GraphDomainError(f"connection set {s} is not closed under negation mod {n}")
    adj = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for c in s:
            adj[i, (i + c) % n] = 1
    return Graph(adj, f"cay({n};{','.join(map(str, s))})")


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges (u < v) of g in lexicographic order."""
    es = g.edges()
    if not es:
        raise GraphDomainError("line graph of an edgeless graph has no vertices")
    inc = np.zeros((len(es), g.n), dtype=np.int64)
    for i, (u, v) in enumerate(es):
        inc[i, u] = inc[i, v] = 1
    adj = inc @ inc.T
    np.fill_diagonal(adj, 0)
    return Graph((adj > 0).astype(np.int64), f"line({g.label})")


def complement(g: Graph) -> Graph:
    adj = 1 - g.adjacency
    np.fill_diagonal(adj, 0)
    return Graph(adj, f"complement({g.label})")


def coclique_extension(g: Graph, m: int) -> Graph:
    """A(g) (x) J_m; vertex (x, i) gets id x*m + i (vertex-major blocks)."""
    if m < 1:
        raise GraphDomainError(f"coclique extension needs m >= 1, got {m}")
    adj = np.kron(g.adjacency, np.ones((m, m), dtype=np.int64))
    return Graph(adj, f"coclique({g.label},{m})")


def cartesian(g: Graph, h: Graph) -> Graph:
    """Vertex (u, v) gets id u*|h| + v."""
    adj = np.kron(g.adjacency, np.eye(h.n, dtype=np.int64)) + np.kron(
        np.eye(g.n, dtype=np.int64), h.adjacency
    )
    return Graph(adj, f"cartesian({g.label},{h.label})")


# --- predicates and counts --------------------------------------------------------


@dataclass(frozen=True)
class Predicates:
    regular: int | None
    connected: bool
    complete: bool
    bipartite: bool


def degrees(g: Graph) -> list[int]:
    return [g.degree(x) for x in range(g.n)]


def regularity(g: Graph) -> int | None:
    ds = set(degrees(g))
    return ds.pop() if len(ds) == 1 else None


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], deque([s])
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def two_coloring(g: Graph) -> list[int] | None:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def basic_predicates(g: Graph) -> Predicates:
    return Predicates(
        regular=regularity(g),
        connected=is_connected(g),
        complete=g.num_edges == g.n * (g.n - 1) // 2,
        bipartite=two_coloring(g) is not None,
    )


def count_triangles_through(g: Graph, x: int) -> int:
    """Unordered triangles containing x, by checking neighbour pairs."""
    nb = g.neighbors(x)
    return sum(1 for u, v in itertools.combinations(nb, 2) if g.has_edge(u, v))


@dataclass(frozen=True)
class QuadrangleCount:
    total: int
    through: tuple[int, ...]


def count_quadrangles(g: Graph) -> QuadrangleCount:
    """Count 4-cycles (as subgraphs, not necessarily induced).

    Each cycle a-b-d-c-a is enumerated once: a is its smallest vertex and {b, c}
    are the two cycle-neighbours of a, with b < c.
    """
    nbr = [set(g.neighbors(x)) for x in range(g.n)]
    through = [0] * g.n
    total = 0
    for a in range(g.n):
        higher = sorted(v for v in nbr[a] if v > a)
        for b, c in itertools.combinations(higher, 2):
            for d in nbr[b] & nbr[c]:
                if d > a:
                    total += 1
                    for v in (a, b, c, d):
                        through[v] += 1
    return QuadrangleCount(total, tuple(through))


def walk_counts(g: Graph, x: int, r: int) -> list[int]:
    """Row x of A^r: number of r-walks from x to every vertex."""
    if r < 0:
        raise ValueError("walk length must be non-negative")
    row = [0] * g.n
    row[x] = 1
    for _ in range(r):
        nxt = [0] * g.n
        for z, w in enumerate(row):
            if w:
                for y in g.neighbors(z):
                    nxt[y] += w
        row = nxt
    return row
