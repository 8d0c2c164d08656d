"""Line-oriented graph text format.

Header ``m <n>`` starts a multigraph, ``d <n>`` a digraph.  Body records
are ``e u v w`` (undirected pair with multiplicity 1 or 2) or ``a u v``
(one arc).  Vertices are 0-indexed; ``#`` starts a comment line; anything
else is rejected with its line and column.  ``format_graph . parse_graph``
is the identity on canonical text, and ``parse_graph . format_graph`` is
the identity on graphs.
"""

from __future__ import annotations

from typing import Union

from .errors import (
    KindMismatchError,
    ParseSemanticsError,
    ParseSyntaxError,
    TrifactorError,
)
from .graphs import Digraph, StandardMultigraph, build_digraph, build_multigraph

__all__ = ["parse_graph", "format_graph"]

GraphValue = Union[StandardMultigraph, Digraph]


def parse_graph(text: str) -> GraphValue:
    """Parse graph text; raises with 1-based line/column on any defect."""
    lines = text.splitlines()
    header = None
    header_line = 0
    for i, raw in enumerate(lines, 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        header = stripped.split()
        header_line = i
        break
    if header is None:
        raise ParseSyntaxError("empty input, expected header", 1)
    if len(header) != 2 or header[0] not in ("m", "d"):
        raise ParseSyntaxError("expected header 'm <n>' or 'd <n>'", header_line)
    kind = header[0]
    try:
        n = int(header[1])
    except ValueError:
        raise ParseSyntaxError(f"bad vertex count {header[1]!r}", header_line, 3)
    if n < 0:
        raise ParseSemanticsError(f"negative vertex count {n}", header_line, 3)
    edges: list[tuple[int, int, int]] = []
    arcs: list[tuple[int, int]] = []
    for i, raw in enumerate(lines, 1):
        if i <= header_line:
            continue
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        tag = fields[0]
        if tag == "e":
            if kind != "m":
                raise KindMismatchError("edge record in a digraph body", i)
            if len(fields) != 4:
                raise ParseSyntaxError("expected 'e u v w'", i)
            u, v, w = (_int_field(f, i, j + 2) for j, f in enumerate(fields[1:]))
            _check_pair(u, v, n, i)
            if w not in (1, 2):
                raise ParseSemanticsError(f"multiplicity {w} outside 1..2", i, 7)
            edges.append((u, v, w))
        elif tag == "a":
            if kind != "d":
                raise KindMismatchError("arc record in a multigraph body", i)
            if len(fields) != 3:
                raise ParseSyntaxError("expected 'a u v'", i)
            u, v = (_int_field(f, i, j + 2) for j, f in enumerate(fields[1:]))
            _check_pair(u, v, n, i)
            arcs.append((u, v))
        else:
            raise ParseSyntaxError(f"unknown record {tag!r}", i)
    try:
        if kind == "m":
            return build_multigraph(n, edges)
        return build_digraph(n, arcs)
    except TrifactorError as exc:
        raise ParseSemanticsError(str(exc), header_line) from exc


def _int_field(field: str, line: int, col: int) -> int:
    try:
        return int(field)
    except ValueError:
        raise ParseSyntaxError(f"expected integer, got {field!r}", line, col)


def _check_pair(u: int, v: int, n: int, line: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise ParseSemanticsError(f"vertex pair ({u},{v}) outside 0..{n - 1}", line, 3)
    if u == v:
        raise ParseSemanticsError(f"loop at vertex {u}", line, 3)


def format_graph(g: GraphValue) -> str:
    """Canonical text: header, then records sorted by vertex indices."""
    if isinstance(g, StandardMultigraph):
        if g.alive != (1 << g.n) - 1:
            raise ValueError("cannot serialize a graph with deleted vertices")
        lines = [f"m {g.n}"]
        for u, v, w in sorted(g.pairs()):
            lines.append(f"e {u} {v} {w}")
        return "\n".join(lines) + "\n"
    lines = [f"d {g.n}"]
    for u, v in sorted(g.arcs()):
        lines.append(f"a {u} {v}")
    return "\n".join(lines) + "\n"
