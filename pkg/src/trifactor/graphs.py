"""Core graph data model: standard multigraphs, digraphs, degree statistics.

A *standard multigraph* carries a multiplicity in {0, 1, 2} on every
unordered vertex pair.  Pairs with multiplicity 2 are *heavy*, pairs with
multiplicity 1 are *light*.  Two simple graphs ride along: the support
graph (pairs with multiplicity >= 1) and the heavy graph (multiplicity 2).

Vertices are dense integer indices 0..n-1.  Vertex deletion is realized by
an index-stable "alive" mask rather than reindexing, so higher layers can
delete vertices and still report results in the original coordinates.
All graph values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DuplicatePairError,
    LoopEdgeError,
    MultiplicityError,
    VertexRangeError,
)

__all__ = [
    "StandardMultigraph",
    "SimpleGraph",
    "Digraph",
    "HeavyView",
    "build_multigraph",
    "build_simple_graph",
    "build_digraph",
    "underlying_multigraph",
    "degree_stats",
    "pair_weight",
    "add_dominating_vertex",
]


def _pair_index(u: int, v: int) -> int:
    # triangular index, requires u < v
    return v * (v - 1) // 2 + u


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class StandardMultigraph:
    """Multigraph with pair multiplicities in {0, 1, 2}.

    Stores multiplicities in a flat triangular array and keeps bitmask
    adjacency for the support and heavy graphs.  ``alive`` is the bitmask
    of non-deleted vertices; all degree statistics, edge iterators and
    equality ignore dead vertices.
    """

    __slots__ = ("n", "_tri", "alive", "_adj1", "_adj2", "_deg")

    def __init__(self, n: int, tri: bytes, alive: Optional[int] = None):
        if alive is None:
            alive = (1 << n) - 1
        self.n = n
        self._tri = tri
        self.alive = alive
        adj1 = [0] * n
        adj2 = [0] * n
        deg = [0] * n
        for v in _iter_bits(alive):
            base = v * (v - 1) // 2
            for u in range(v):
                if not (alive >> u) & 1:
                    continue
                m = tri[base + u]
                if m:
                    adj1[u] |= 1 << v
                    adj1[v] |= 1 << u
                    deg[u] += m
                    deg[v] += m
                    if m == 2:
                        adj2[u] |= 1 << v
                        adj2[v] |= 1 << u
        self._adj1 = tuple(adj1)
        self._adj2 = tuple(adj2)
        self._deg = tuple(deg)

    # -- basic queries ---------------------------------------------------

    @property
    def order(self) -> int:
        """Number of live vertices."""
        return bin(self.alive).count("1")

    def vertices(self) -> Iterator[int]:
        return _iter_bits(self.alive)

    def is_alive(self, v: int) -> bool:
        return 0 <= v < self.n and (self.alive >> v) & 1 == 1

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise VertexRangeError(f"vertex {v} outside 0..{self.n - 1}")
        if not (self.alive >> v) & 1:
            raise VertexRangeError(f"vertex {v} is deleted")

    def mu(self, u: int, v: int) -> int:
        """Multiplicity of the pair {u, v}; 0 for loops and dead vertices."""
        if u == v:
            return 0
        if not ((self.alive >> u) & 1 and (self.alive >> v) & 1):
            return 0
        if u > v:
            u, v = v, u
        return self._tri[_pair_index(u, v)]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._deg[v]

    def min_degree(self) -> int:
        """Minimum degree over live vertices (0 for the empty graph)."""
        degs = [self._deg[v] for v in self.vertices()]
        return min(degs) if degs else 0

    def support_mask(self, v: int) -> int:
        """Bitmask of live neighbors with multiplicity >= 1."""
        return self._adj1[v]

    def heavy_mask(self, v: int) -> int:
        """Bitmask of live neighbors with multiplicity 2."""
        return self._adj2[v]

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Live pairs with positive multiplicity as (u, v, mu), u < v."""
        for v in self.vertices():
            base = v * (v - 1) // 2
            lower = self._adj1[v] & ((1 << v) - 1)
            for u in _iter_bits(lower):
                yield u, v, self._tri[base + u]

    def heavy_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, m in self.pairs() if m == 2]

    def edge_weight(self) -> int:
        """Total multiplicity over live pairs."""
        return sum(m for _, _, m in self.pairs())

    # -- derived graphs --------------------------------------------------

    def restrict(self, keep: Iterable[int] | int) -> "StandardMultigraph":
        """Same slots, with everything outside ``keep`` deleted."""
        mask = keep if isinstance(keep, int) else _mask_of(keep)
        return StandardMultigraph(self.n, self._tri, self.alive & mask)

    def delete(self, v: int) -> "StandardMultigraph":
        self._check_vertex(v)
        return StandardMultigraph(self.n, self._tri, self.alive & ~(1 << v))

    def with_pair(self, u: int, v: int, m: int) -> "StandardMultigraph":
        """Copy with the multiplicity of {u, v} set to ``m``."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise LoopEdgeError(f"loop at {u}")
        if m not in (0, 1, 2):
            raise MultiplicityError(f"multiplicity {m} outside 0..2")
        if u > v:
            u, v = v, u
        tri = bytearray(self._tri)
        tri[_pair_index(u, v)] = m
        return StandardMultigraph(self.n, bytes(tri), self.alive)

    def support(self) -> "SimpleGraph":
        """Simple graph on the pairs with multiplicity >= 1."""
        return SimpleGraph(self.n, self._adj1, self.alive)

    def heavy_graph(self) -> "SimpleGraph":
        """Simple graph on the heavy pairs."""
        return SimpleGraph(self.n, self._adj2, self.alive)

    # -- equality --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        # Compare live vertex sets and induced multiplicities; dead slots
        # are invisible, so appending then deleting a vertex is an identity.
        if not isinstance(other, StandardMultigraph):
            return NotImplemented
        if self.alive != other.alive:
            return False
        return sorted(self.pairs()) == sorted(other.pairs())

    def __hash__(self):
        return hash((self.alive, tuple(sorted(self.pairs()))))

    def __repr__(self):
        return (
            f"StandardMultigraph(n={self.n}, order={self.order}, "
            f"pairs={sum(1 for _ in self.pairs())})"
        )


class SimpleGraph:
    """Simple graph view backed by bitmask adjacency."""

    __slots__ = ("n", "_adj", "alive")

    def __init__(self, n: int, adj: Sequence[int], alive: Optional[int] = None):
        self.n = n
        self._adj = tuple(adj)
        self.alive = (1 << n) - 1 if alive is None else alive

    @property
    def order(self) -> int:
        return bin(self.alive).count("1")

    def vertices(self) -> Iterator[int]:
        return _iter_bits(self.alive)

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def is_edge(self, u: int, v: int) -> bool:
        return u != v and (self._adj[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return bin(self._adj[v]).count("1")

    def min_degree(self) -> int:
        degs = [self.degree(v) for v in self.vertices()]
        return min(degs) if degs else 0

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in self.vertices():
            lower = self._adj[v] & ((1 << v) - 1)
            for u in _iter_bits(lower):
                out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(bin(self._adj[v]).count("1") for v in self.vertices()) // 2

    def cut_size(self, part_a: int) -> int:
        """Number of edges with exactly one end in the bitmask ``part_a``."""
        part_b = self.alive & ~part_a
        return sum(bin(self._adj[v] & part_b).count("1") for v in _iter_bits(part_a & self.alive))

    def restrict(self, keep: Iterable[int] | int) -> "SimpleGraph":
        mask = keep if isinstance(keep, int) else _mask_of(keep)
        return SimpleGraph(self.n, self._adj, self.alive & mask)

    def components(self) -> list[frozenset[int]]:
        seen = 0
        comps = []
        for v in self.vertices():
            if (seen >> v) & 1:
                continue
            frontier = 1 << v
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                for u in _iter_bits(frontier):
                    nxt |= self._adj[u] & self.alive
                frontier = nxt & ~comp
            seen |= comp
            comps.append(frozenset(_iter_bits(comp)))
        return comps

    def to_multigraph(self) -> StandardMultigraph:
        """Multiplicity-1 multigraph on the same edges."""
        tri = bytearray(self.n * (self.n - 1) // 2)
        for u, v in self.edges():
            tri[_pair_index(u, v)] = 1
        return StandardMultigraph(self.n, bytes(tri), self.alive)

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.alive == other.alive and self.edges() == other.edges()

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={self.edge_count()})"


class Digraph:
    """Simple directed graph: no loops, at most one arc per ordered pair."""

    __slots__ = ("n", "_out", "_in")

    def __init__(self, n: int, out_masks: Sequence[int]):
        self.n = n
        self._out = tuple(out_masks)
        in_masks = [0] * n
        for u in range(n):
            for v in _iter_bits(self._out[u]):
                in_masks[v] |= 1 << u
        self._in = tuple(in_masks)

    @property
    def order(self) -> int:
        return self.n

    def vertices(self) -> Iterator[int]:
        return iter(range(self.n))

    def has_arc(self, u: int, v: int) -> bool:
        return u != v and (self._out[u] >> v) & 1 == 1

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _iter_bits(self._out[u])]

    def arc_count(self) -> int:
        return sum(bin(m).count("1") for m in self._out)

    def min_total_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(
            bin(self._in[v]).count("1") + bin(self._out[v]).count("1")
            for v in range(self.n)
        )

    def min_semidegree(self) -> int:
        if self.n == 0:
            return 0
        return min(
            min(bin(self._in[v]).count("1"), bin(self._out[v]).count("1"))
            for v in range(self.n)
        )

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._out == other._out

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arc_count()})"


class HeavyView:
    """Bundle of the support and heavy simple graphs of a multigraph."""

    __slots__ = ("graph", "support", "heavy")

    def __init__(self, m: StandardMultigraph):
        self.graph = m
        self.support = m.support()
        self.heavy = m.heavy_graph()


def _mask_of(verts: Iterable[int]) -> int:
    mask = 0
    for v in verts:
        mask |= 1 << v
    return mask


# -- construction ---------------------------------------------------------


def build_multigraph(n: int, entries: Iterable[tuple[int, int, int]]) -> StandardMultigraph:
    """Build a standard multigraph from (u, v, multiplicity) entries.

    Multiplicities must be 1 or 2; a pair may be listed at most once.
    """
    if n < 0:
        raise VertexRangeError(f"negative vertex count {n}")
    tri = bytearray(n * (n - 1) // 2)
    seen = set()
    for u, v, w in entries:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"pair ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdgeError(f"loop at {u}")
        if w not in (1, 2):
            raise MultiplicityError(f"multiplicity {w} for ({u},{v}) outside 1..2")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicatePairError(f"pair ({key[0]},{key[1]}) listed twice")
        seen.add(key)
        tri[_pair_index(*key)] = w
    return StandardMultigraph(n, bytes(tri))


def build_simple_graph(n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
    """Build a simple graph from undirected edges."""
    if n < 0:
        raise VertexRangeError(f"negative vertex count {n}")
    adj = [0] * n
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdgeError(f"loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicatePairError(f"edge ({key[0]},{key[1]}) listed twice")
        seen.add(key)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return SimpleGraph(n, adj)


def build_digraph(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph from ordered arcs; at most one arc per ordered pair."""
    if n < 0:
        raise VertexRangeError(f"negative vertex count {n}")
    out = [0] * n
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"arc ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdgeError(f"loop at {u}")
        if (out[u] >> v) & 1:
            raise DuplicatePairError(f"arc ({u},{v}) listed twice")
        out[u] |= 1 << v
    return Digraph(n, out)


# -- operations -----------------------------------------------------------


def underlying_multigraph(d: Digraph) -> StandardMultigraph:
    """Erase orientations: the pair multiplicity is the number of arcs.

    A 2-cycle becomes a heavy edge, so the minimum degree of the result
    equals the minimum total degree of the digraph.
    """
    n = d.n
    tri = bytearray(n * (n - 1) // 2)
    for v in range(n):
        for u in _iter_bits((d.out_mask(v) | d.in_mask(v)) & ((1 << v) - 1)):
            tri[_pair_index(u, v)] = d.has_arc(u, v) + d.has_arc(v, u)
    return StandardMultigraph(n, bytes(tri))


def degree_stats(d: Digraph, v: int) -> tuple[int, int, int, int]:
    """(in, out, total, semi) degree of ``v``; semi = min(in, out)."""
    if not 0 <= v < d.n:
        raise VertexRangeError(f"vertex {v} outside 0..{d.n - 1}")
    deg_in = bin(d.in_mask(v)).count("1")
    deg_out = bin(d.out_mask(v)).count("1")
    return deg_in, deg_out, deg_in + deg_out, min(deg_in, deg_out)


def pair_weight(m: StandardMultigraph, left: Iterable[int], right: Iterable[int]) -> int:
    """Sum of mu(v, u) over v in ``left``, u in ``right``.

    For overlapping sets this equals |E(left, right)| plus the induced
    weight of the intersection; pairs inside the intersection count twice.
    """
    left = list(left)
    right = list(right)
    for v in left:
        m._check_vertex(v)
    for v in right:
        m._check_vertex(v)
    return sum(m.mu(v, u) for v in left for u in right)


def add_dominating_vertex(m: StandardMultigraph) -> StandardMultigraph:
    """Append one vertex joined by heavy edges to every live vertex."""
    n1 = m.n + 1
    tri = bytearray(n1 * (n1 - 1) // 2)
    for u, v, w in m.pairs():
        tri[_pair_index(u, v)] = w
    base = m.n * (m.n - 1) // 2
    for v in m.vertices():
        tri[base + v] = 2
    return StandardMultigraph(n1, bytes(tri), m.alive | (1 << m.n))
