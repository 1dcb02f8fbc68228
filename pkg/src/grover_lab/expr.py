"""Parser for graph construction expressions.

    expr := cycle(n) | complete(n) | complete_multipartite(n1,...,nk) | hamming(d,q)
          | cay(n; s1,...,sm) | line(expr) | complement(expr) | coclique(expr, m)
          | cartesian(expr, expr) | graph6:"<string>"

Names are case-insensitive, whitespace is ignored outside the graph6 string.
The returned graph's label is the canonical spelling (lower case, no spaces,
circulant connection sets symmetrised and sorted).
"""

from __future__ import annotations

import re

from . import graphs
from .errors import ParseError
from .graph6 import parse_graph6
from .graphs import Graph

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[+-]?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m:
            raise self.error("expected a family name")
        self.pos = m.end()
        return m.group().lower()

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def int_list(self, close: str = ")") -> list[int]:
        vals = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            vals.append(self.integer())
        self.expect(close)
        return vals

    def expr(self) -> Graph:
        name = self.name()
        if name == "graph6":
            self.expect(":")
            self.expect('"')
            end = self.text.find('"', self.pos)
            if end < 0:
                raise self.error("unterminated graph6 string")
            body = self.text[self.pos:end]
            self.pos = end + 1
            return parse_graph6(body)
        self.expect("(")
        if name in ("cycle", "complete"):
            (n,) = self._ints(1)
            return getattr(graphs, name)(n)
        if name == "complete_multipartite":
            return graphs.complete_multipartite(*self.int_list())
        if name == "hamming":
            d, q = self._ints(2)
            return graphs.hamming(d, q)
        if name == "cay":
            n = self.integer()
            self.expect(";")
            return graphs.circulant(n, self.int_list())
        if name in ("line", "complement"):
            g = self.expr()
            self.expect(")")
            return graphs.line_graph(g) if name == "line" else graphs.complement(g)
        if name == "coclique":
            g = self.expr()
            self.expect(",")
            m = self.integer()
            self.expect(")")
            return graphs.coclique_extension(g, m)
        if name == "cartesian":
            g = self.expr()
            self.expect(",")
            h = self.expr()
            self.expect(")")
            return graphs.cartesian(g, h)
        raise self.error(f"unknown graph family {name!r}")

    def _ints(self, count: int) -> list[int]:
        vals = self.int_list()
        if len(vals) != count:
            raise self.error(f"expected {count} integer argument(s), got {len(vals)}")
        return vals


def construct(spec: str) -> Graph:
    """Build the graph described by a construction expression."""
    if not isinstance(spec, str) or not spec.strip():
        raise ParseError("empty construction expression")
    p = _Parser(spec)
    g = p.expr()
    if p.peek():
        raise p.error("trailing input")
    return g
