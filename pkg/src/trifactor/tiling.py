"""Triangle classification, tilings, directed realization, exchange splits.

A weight-k triple ("k-triangle") is a vertex triple whose three pairs all
have multiplicity >= 1 and whose multiplicities sum to at least k.  Tiles
record the triple together with the weight class they are required to
meet; a tiling is a set of pairwise disjoint tiles.

The four ``fold_in_vertex`` / ``split_*`` operations are small guaranteed
factorizations: given a weight-5 triple plus nearby structure meeting a
weight precondition, they return a rearrangement into heavier disjoint
pieces.  When a precondition holds, a witness always exists; the scan
returns the first one in lexicographic order so results are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateVerticesError,
    NotRealizableError,
    PreconditionError,
)
from .graphs import Digraph, StandardMultigraph

__all__ = [
    "Tile",
    "Tiling",
    "DirectedTriple",
    "ValidityReport",
    "classify_triangle",
    "triple_weight",
    "validate_tiling",
    "order_as",
    "realize_directed",
    "fold_in_vertex",
    "split_two_vertices",
    "split_two_heavy_edges",
    "split_heavy_path",
]

TRANSITIVE = "transitive"
CYCLIC = "cyclic"


@dataclass(frozen=True)
class Tile:
    """A vertex triple together with the weight class it must meet."""

    verts: tuple[int, int, int]
    required_weight: int = 3

    def __post_init__(self):
        object.__setattr__(self, "verts", tuple(sorted(self.verts)))

    @property
    def mask(self) -> int:
        a, b, c = self.verts
        return (1 << a) | (1 << b) | (1 << c)


@dataclass(frozen=True)
class Tiling:
    """Pairwise disjoint tiles, stored sorted for canonical comparison."""

    tiles: tuple[Tile, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "tiles", tuple(sorted(self.tiles, key=lambda t: t.verts))
        )

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    @property
    def covered(self) -> frozenset[int]:
        out: set[int] = set()
        for t in self.tiles:
            out.update(t.verts)
        return frozenset(out)

    @property
    def covered_mask(self) -> int:
        mask = 0
        for t in self.tiles:
            mask |= t.mask
        return mask


@dataclass(frozen=True)
class DirectedTriple:
    """An ordered triple realizing a transitive or cyclic triangle."""

    verts: tuple[int, int, int]
    kind: str  # "transitive" | "cyclic"

    def arcs(self) -> tuple[tuple[int, int], ...]:
        x, y, z = self.verts
        if self.kind == TRANSITIVE:
            return ((x, y), (y, z), (x, z))
        return ((x, y), (y, z), (z, x))


@dataclass
class ValidityReport:
    valid: bool
    failures: list[str] = field(default_factory=list)
    tile_weights: tuple[Optional[int], ...] = ()
    required: tuple[int, ...] = ()
    covered: frozenset[int] = frozenset()


def classify_triangle(m: StandardMultigraph, triple: Sequence[int]) -> Optional[int]:
    """Induced weight of the triple, or None when a pair is absent.

    The weight is the sum of the three pair multiplicities; it is defined
    only when all three pairs are present (the triple spans a triangle).
    """
    a, b, c = triple
    if a == b or a == c or b == c:
        raise DuplicateVerticesError(f"triple {tuple(triple)} has repeats")
    m1, m2, m3 = m.mu(a, b), m.mu(a, c), m.mu(b, c)
    if m1 == 0 or m2 == 0 or m3 == 0:
        return None
    return m1 + m2 + m3


def triple_weight(m: StandardMultigraph, a: int, b: int, c: int) -> Optional[int]:
    """classify_triangle without tuple packing; hot-path helper."""
    m1 = m.mu(a, b)
    if not m1:
        return None
    m2 = m.mu(a, c)
    if not m2:
        return None
    m3 = m.mu(b, c)
    if not m3:
        return None
    return m1 + m2 + m3


def _match_requirements(weights: Sequence[int], required: Sequence[int]) -> Optional[list[str]]:
    """Greedy multiset cover: heaviest achieved weight serves the largest
    requirement it meets.  Returns a list of failure strings, or None when
    every requirement is served."""
    fails = []
    if len(weights) != len(required):
        fails.append(f"tile count {len(weights)} != required {len(required)}")
        return fails
    got = sorted((w for w in weights if w is not None), reverse=True)
    want = sorted(required, reverse=True)
    if len(got) < len(want):
        fails.append("some tiles are not triangles")
    for w, r in zip(got, want):
        if w < r:
            fails.append(f"achieved weight {w} below required {r}")
    return fails or None


def validate_tiling(
    m: StandardMultigraph,
    tiling: Tiling | Iterable[Tile],
    required: Sequence[int],
    factor: bool = False,
) -> ValidityReport:
    """Check disjointness, per-tile weight, and (optionally) full coverage.

    ``required`` is a multiset of weight classes; achieved tile weights are
    matched against it greedily, heaviest first.  With ``factor`` set, the
    tiles must cover every live vertex.
    """
    tiles = list(tiling.tiles if isinstance(tiling, Tiling) else tiling)
    report = ValidityReport(valid=True, required=tuple(sorted(required, reverse=True)))
    seen = 0
    weights = []
    for t in tiles:
        a, b, c = t.verts
        if len({a, b, c}) < 3:
            report.failures.append(f"tile {t.verts} repeats a vertex")
            weights.append(None)
            continue
        if not (m.is_alive(a) and m.is_alive(b) and m.is_alive(c)):
            report.failures.append(f"tile {t.verts} uses a deleted vertex")
            weights.append(None)
            continue
        if seen & t.mask:
            report.failures.append(f"tile {t.verts} overlaps another tile")
        seen |= t.mask
        w = triple_weight(m, a, b, c)
        if w is None:
            report.failures.append(f"tile {t.verts} is not a triangle")
        weights.append(w)
    report.tile_weights = tuple(weights)
    report.covered = frozenset(v for v in m.vertices() if (seen >> v) & 1)
    fails = _match_requirements(weights, required)
    if fails:
        report.failures.extend(fails)
    if factor and seen != m.alive:
        missing = [v for v in m.vertices() if not (seen >> v) & 1]
        report.failures.append(f"not a factor: uncovered {missing}")
    report.valid = not report.failures
    return report


def order_as(d: Digraph, triple: Sequence[int], kind: str) -> Optional[DirectedTriple]:
    """First vertex ordering realizing the requested kind, by direct arc
    check, or None.  No weight precondition; see realize_directed for the
    guarded variant."""
    a, b, c = triple
    if len({a, b, c}) < 3:
        raise DuplicateVerticesError(f"triple {tuple(triple)} has repeats")
    for perm in itertools.permutations((a, b, c)):
        x, y, z = perm
        if kind == TRANSITIVE:
            if d.has_arc(x, y) and d.has_arc(y, z) and d.has_arc(x, z):
                return DirectedTriple(perm, TRANSITIVE)
        else:
            if d.has_arc(x, y) and d.has_arc(y, z) and d.has_arc(z, x):
                return DirectedTriple(perm, CYCLIC)
    return None


def realize_directed(d: Digraph, triple: Sequence[int], kind: str) -> DirectedTriple:
    """Order a triple as a transitive or cyclic triangle using arcs of ``d``.

    Requires an underlying triangle of weight >= 4 for transitive and >= 5
    for cyclic; under that precondition an ordering always exists.
    """
    a, b, c = triple
    need = 4 if kind == TRANSITIVE else 5
    w = sum(
        d.has_arc(x, y) + d.has_arc(y, x)
        for x, y in ((a, b), (a, c), (b, c))
    )
    pairs_ok = all(
        d.has_arc(x, y) or d.has_arc(y, x) for x, y in ((a, b), (a, c), (b, c))
    )
    if w < need or not pairs_ok:
        raise PreconditionError(
            f"triple {tuple(triple)} has weight {w if pairs_ok else 'non-triangle'},"
            f" needs {need} for {kind}"
        )
    out = order_as(d, triple, kind)
    if out is None:
        raise NotRealizableError(
            f"no {kind} ordering of {tuple(triple)} despite weight {w}"
        )
    return out


# -- exchange factorizations ------------------------------------------------


def _require_five(m: StandardMultigraph, tri: Sequence[int], what: str) -> tuple[int, int, int]:
    verts = tuple(sorted(tri))
    if len(set(verts)) < 3:
        raise DuplicateVerticesError(f"{what} {tuple(tri)} has repeats")
    w = classify_triangle(m, verts)
    if w is None or w < 5:
        raise PreconditionError(f"{what} {tuple(tri)} is not a weight-5 triple")
    return verts  # type: ignore[return-value]


def _tile_edges(verts: Sequence[int]) -> list[tuple[int, int]]:
    a, b, c = sorted(verts)
    return [(a, b), (a, c), (b, c)]


def fold_in_vertex(
    m: StandardMultigraph, tri: Sequence[int], x: int
) -> tuple[int, int]:
    """Edge e of a weight-5 triple such that x+e is a (w+1)-weight triple.

    ``w`` is the weight from x into the triple and must be 3 or 4.  The
    returned edge is the lexicographically first one that works.
    """
    verts = _require_five(m, tri, "triple")
    if x in verts:
        raise PreconditionError(f"vertex {x} lies in the triple")
    w = sum(m.mu(x, v) for v in verts)
    if not 3 <= w <= 4:
        raise PreconditionError(f"weight {w} from vertex into triple, needs 3..4")
    for e in _tile_edges(verts):
        tw = triple_weight(m, x, e[0], e[1])
        if tw is not None and tw >= w + 1:
            return e
    raise NotRealizableError(f"no edge of {verts} folds in {x}")


def split_two_vertices(
    m: StandardMultigraph, tri: Sequence[int], x1: int, x2: int
) -> tuple[Tile, tuple[int, int]]:
    """Factor {x1, x2} + 5-triple into a weight-5 tile plus an edge.

    Requires total weight >= 9 from {x1, x2} into the triple.  When both
    vertices carry weight >= 4 into the triple the leftover edge is heavy.
    """
    verts = _require_five(m, tri, "triple")
    if x1 == x2 or x1 in verts or x2 in verts:
        raise PreconditionError("attached vertices must be distinct and outside")
    w1 = sum(m.mu(x1, v) for v in verts)
    w2 = sum(m.mu(x2, v) for v in verts)
    if w1 + w2 < 9:
        raise PreconditionError(f"joint weight {w1 + w2} into triple, needs >= 9")
    need_heavy = min(w1, w2) >= 4
    pool = sorted(verts + (x1, x2))
    for trip in itertools.combinations(pool, 3):
        rest = tuple(v for v in pool if v not in trip)
        tw = triple_weight(m, *trip)
        if tw is None or tw < 5:
            continue
        ew = m.mu(*rest)
        if ew == 0 or (need_heavy and ew < 2):
            continue
        return Tile(trip, 5), rest
    raise NotRealizableError(f"no 5-plus-edge factor of {pool}")


def split_two_heavy_edges(
    m: StandardMultigraph,
    tri: Sequence[int],
    e1: tuple[int, int],
    e2: tuple[int, int],
) -> tuple[Tile, Tile]:
    """Two disjoint weight-5 tiles inside e1 + e2 + 5-triple.

    e1 and e2 must be disjoint heavy edges outside the triple with weights
    >= 9 and >= 7 into it.
    """
    verts = _require_five(m, tri, "triple")
    ends = (*e1, *e2)
    if len(set(ends)) < 4 or any(v in verts for v in ends):
        raise PreconditionError("edges must be disjoint and outside the triple")
    if m.mu(*e1) != 2 or m.mu(*e2) != 2:
        raise PreconditionError("both edges must be heavy")
    w1 = sum(m.mu(a, v) for a in e1 for v in verts)
    w2 = sum(m.mu(a, v) for a in e2 for v in verts)
    if w1 < 9 or w2 < 7:
        raise PreconditionError(f"edge weights into triple ({w1},{w2}), need (9,7)")
    for v1, v2 in itertools.permutations(verts, 2):
        t1 = triple_weight(m, e1[0], e1[1], v1)
        t2 = triple_weight(m, e2[0], e2[1], v2)
        if t1 is not None and t1 >= 5 and t2 is not None and t2 >= 5:
            return Tile((e1[0], e1[1], v1), 5), Tile((e2[0], e2[1], v2), 5)
    raise NotRealizableError(f"no disjoint 5-tiles over {ends} + {verts}")


def split_heavy_path(
    m: StandardMultigraph, tri: Sequence[int], path: Sequence[int]
) -> tuple[Tile, Tile]:
    """Factor heavy path (x,y,z) + 5-triple into a weight-5 and weight-4 tile.

    The path edges xy and yz must be heavy, the path disjoint from the
    triple, with weight >= 9 from {x, z} and >= 1 from y into the triple.
    Returns (five, four).
    """
    verts = _require_five(m, tri, "triple")
    x, y, z = path
    if len({x, y, z}) < 3 or any(v in verts for v in (x, y, z)):
        raise PreconditionError("path must be three distinct outside vertices")
    if m.mu(x, y) != 2 or m.mu(y, z) != 2:
        raise PreconditionError("path edges must be heavy")
    wxz = sum(m.mu(x, v) + m.mu(z, v) for v in verts)
    wy = sum(m.mu(y, v) for v in verts)
    if wxz < 9 or wy < 1:
        raise PreconditionError(
            f"weights into triple (ends {wxz}, middle {wy}), need (9,1)"
        )
    pool = sorted(verts + (x, y, z))
    for trip in itertools.combinations(pool, 3):
        rest = tuple(v for v in pool if v not in trip)
        w5 = triple_weight(m, *trip)
        if w5 is None or w5 < 5:
            continue
        w4 = triple_weight(m, *rest)
        if w4 is None or w4 < 4:
            continue
        return Tile(trip, 5), Tile(rest, 4)
    raise NotRealizableError(f"no 5-plus-4 factor of {pool}")
