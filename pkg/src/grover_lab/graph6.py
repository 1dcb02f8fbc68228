"""graph6 reader/writer.

Format: N(n) followed by the upper triangle of the adjacency matrix, column by
column ((0,1), (0,2), (1,2), (0,3), ...), packed big-endian into 6-bit groups,
each group stored as chr(63 + value).
"""

from __future__ import annotations

import numpy as np

from .errors import ParseError
from .graphs import Graph

HEADER = ">>graph6<<"


def _decode_n(data: list[int]) -> tuple[int, int]:
    """Return (n, number of bytes consumed)."""
    if not data:
        raise ParseError("empty graph6 input")
    if data[0] != 63:
        return data[0], 1
    if len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field")
        groups, used = data[2:8], 8
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field")
        groups, used = data[1:4], 4
    n = 0
    for v in groups:
        n = (n << 6) | v
    return n, used


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise ParseError("empty graph6 input")
    if s.startswith(":") or s.startswith("&"):
        raise ParseError("sparse6/digraph6 input is not graph6")
    data = []
    for ch in s:
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise ParseError(f"invalid graph6 character {ch!r}")
        data.append(v)
    n, used = _decode_n(data)
    if n < 1:
        raise ParseError("graph6 graph must have at least one vertex")
    body = data[used:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise ParseError(f"truncated graph6 bit stream: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise ParseError(f"graph6 length mismatch for n={n}: {len(body) - need} extra bytes")
    bits = [(v >> (5 - i)) & 1 for v in body for i in range(6)]
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits in graph6 stream")
    adj = np.zeros((n, n), dtype=np.int64)
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                adj[i, j] = adj[j, i] = 1
            pos += 1
    return Graph(adj, f'graph6:"{s}"')


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        out = [n]
    elif n < 258048:
        out = [63] + [(n >> s) & 63 for s in (12, 6, 0)]
    else:
        out = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [int(g.adjacency[i, j]) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(v)
    return "".join(chr(63 + v) for v in out)
