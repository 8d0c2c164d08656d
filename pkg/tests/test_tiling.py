"""Triangle classification, tiling validation, directed realization,
and the four exchange factorizations."""

import itertools
import random

import pytest

import trifactor as tf
from trifactor.tiling import (
    Tile,
    fold_in_vertex,
    split_heavy_path,
    split_two_heavy_edges,
    split_two_vertices,
)


def heavy_triple():
    return tf.build_multigraph(3, [(0, 1, 2), (0, 2, 2), (1, 2, 2)])


def test_classify_examples():
    assert tf.classify_triangle(heavy_triple(), (0, 1, 2)) == 6
    m5 = tf.build_multigraph(3, [(0, 1, 2), (0, 2, 2), (1, 2, 1)])
    assert tf.classify_triangle(m5, (0, 1, 2)) == 5
    hole = tf.build_multigraph(3, [(0, 1, 2), (0, 2, 2)])
    assert tf.classify_triangle(hole, (0, 1, 2)) is None
    with pytest.raises(tf.DuplicateVerticesError):
        tf.classify_triangle(hole, (0, 0, 1))


def test_classify_permutation_invariant():
    rng = random.Random(9)
    for _ in range(100):
        m = tf.random_multigraph(5, rng, 0.5, 0.3)
        for trip in itertools.combinations(range(5), 3):
            vals = {tf.classify_triangle(m, p) for p in itertools.permutations(trip)}
            assert len(vals) == 1


def test_validate_tiling():
    m = tf.build_multigraph(
        6,
        [(u, v, 2) for u, v in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]],
    )
    good = [Tile((0, 1, 2), 5), Tile((3, 4, 5), 4)]
    rep = tf.validate_tiling(m, good, (4, 5), factor=True)
    assert rep.valid
    overlapping = [Tile((0, 1, 2)), Tile((2, 3, 4))]
    rep = tf.validate_tiling(m, overlapping, (3, 3))
    assert not rep.valid and any("overlap" in f for f in rep.failures)
    lighter = m.with_pair(0, 1, 1)  # first tile drops to weight 5
    rep = tf.validate_tiling(lighter, good, (6, 6))
    assert not rep.valid and any("below required" in f for f in rep.failures)
    rep2 = tf.validate_tiling(m, [Tile((0, 1, 2))], (6, 6))
    assert not rep2.valid  # tile count mismatch


def test_validate_factor_coverage():
    m = heavy_triple()
    rep = tf.validate_tiling(m, [Tile((0, 1, 2))], (3,), factor=True)
    assert rep.valid
    m4 = tf.add_dominating_vertex(m)
    rep = tf.validate_tiling(m4, [Tile((0, 1, 2))], (3,), factor=True)
    assert not rep.valid and any("uncovered" in f for f in rep.failures)


def test_realize_directed_examples():
    d = tf.build_digraph(3, [(0, 1), (1, 0), (0, 2), (1, 2)])
    t = tf.realize_directed(d, (0, 1, 2), "transitive")
    assert t.kind == "transitive"
    for a, b in t.arcs():
        assert d.has_arc(a, b)
    d5 = tf.build_digraph(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0)])
    c = tf.realize_directed(d5, (0, 1, 2), "cyclic")
    assert c.kind == "cyclic"
    for a, b in c.arcs():
        assert d5.has_arc(a, b)
    weak = tf.build_digraph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(tf.PreconditionError):
        tf.realize_directed(weak, (0, 1, 2), "transitive")


def test_realize_directed_never_stalls_when_qualified():
    # all digraphs on 3 vertices: 4 states per unordered pair
    states = [(), ((0, 1),), ((1, 0),), ((0, 1), (1, 0))]
    pairs = [(0, 1), (0, 2), (1, 2)]
    for combo in itertools.product(range(4), repeat=3):
        arcs = []
        for (u, v), s in zip(pairs, combo):
            for a, b in states[s]:
                arcs.append((u, v) if (a, b) == (0, 1) else (v, u))
        d = tf.build_digraph(3, arcs)
        m = tf.underlying_multigraph(d)
        w = tf.classify_triangle(m, (0, 1, 2))
        if w is not None and w >= 4:
            t = tf.realize_directed(d, (0, 1, 2), "transitive")
            assert all(d.has_arc(a, b) for a, b in t.arcs())
        if w is not None and w >= 5:
            c = tf.realize_directed(d, (0, 1, 2), "cyclic")
            assert all(d.has_arc(a, b) for a, b in c.arcs())


def test_fold_in_vertex_examples():
    # triple heavy on (0,1),(0,2); x=3 heavy to 1, light to 2
    m = tf.build_multigraph(
        4, [(0, 1, 2), (0, 2, 2), (1, 2, 1), (3, 1, 2), (3, 2, 1)]
    )
    e = fold_in_vertex(m, (0, 1, 2), 3)
    assert e == (1, 2)
    assert tf.classify_triangle(m, (3, 1, 2)) == 4
    with pytest.raises(tf.PreconditionError):
        weak = tf.build_multigraph(4, [(0, 1, 2), (0, 2, 2), (1, 2, 1), (3, 1, 2)])
        fold_in_vertex(weak, (0, 1, 2), 3)  # weight 2 into triple


def test_split_two_vertices_example():
    # x1 sees the triple with weight 6, x2 with 3
    entries = [(0, 1, 2), (0, 2, 2), (1, 2, 1)]
    entries += [(3, i, 2) for i in range(3)]
    entries += [(4, i, 1) for i in range(3)]
    m = tf.build_multigraph(5, entries)
    tile, edge = split_two_vertices(m, (0, 1, 2), 3, 4)
    assert 3 in tile.verts and 4 in edge
    assert tf.classify_triangle(m, tile.verts) >= 5
    assert m.mu(*edge) >= 1
    with pytest.raises(tf.PreconditionError):
        low = tf.build_multigraph(
            5, entries[:3] + [(3, i, 2) for i in range(3)] + [(4, 0, 1), (4, 1, 1)]
        )
        split_two_vertices(low, (0, 1, 2), 3, 4)  # joint weight 8


def test_split_two_heavy_edges_example():
    entries = [(0, 1, 2), (0, 2, 2), (1, 2, 1), (3, 4, 2), (5, 6, 2)]
    entries += [(x, i, 2) for x in (3, 4) for i in range(3)]
    entries += [(5, 0, 2), (5, 1, 1), (5, 2, 1)]
    entries += [(6, i, 1) for i in range(3)]
    m = tf.build_multigraph(7, entries)
    t1, t2 = split_two_heavy_edges(m, (0, 1, 2), (3, 4), (5, 6))
    assert not (t1.mask & t2.mask)
    assert tf.classify_triangle(m, t1.verts) >= 5
    assert tf.classify_triangle(m, t2.verts) >= 5
    with pytest.raises(tf.PreconditionError):
        entries_low = [(0, 1, 2), (0, 2, 2), (1, 2, 1), (3, 4, 2), (5, 6, 2)]
        entries_low += [(x, i, 2) for x in (3, 4) for i in range(3)]
        entries_low += [(5, 0, 1), (5, 1, 1), (5, 2, 1), (6, 0, 1), (6, 1, 1), (6, 2, 1)]
        low = tf.build_multigraph(7, entries_low)
        split_two_heavy_edges(low, (0, 1, 2), (3, 4), (5, 6))  # 6 < 7


def test_split_heavy_path_examples():
    # ends see the triple with weights 6 and 3, middle adjacent to one vertex
    entries = [(0, 1, 2), (0, 2, 2), (1, 2, 1), (3, 4, 2), (4, 5, 2)]
    entries += [(3, i, 2) for i in range(3)]
    entries += [(5, i, 1) for i in range(3)]
    entries += [(4, 0, 1)]
    m = tf.build_multigraph(6, entries)
    five, four = split_heavy_path(m, (0, 1, 2), (3, 4, 5))
    assert tf.classify_triangle(m, five.verts) >= 5
    assert tf.classify_triangle(m, four.verts) >= 4
    assert (five.mask | four.mask) == 0b111111
    with pytest.raises(tf.PreconditionError):
        split_heavy_path(m, (0, 1, 2), (3, 5, 4))  # 35 not heavy


def test_rotating_tile_labels_is_stable():
    rng = random.Random(21)
    for _ in range(60):
        m = tf.random_multigraph(4, rng, 0.6, 0.3)
        w = tf.classify_triangle(m, (0, 1, 2))
        if w is None or w < 5:
            continue
        x_w = sum(m.mu(3, i) for i in range(3))
        if not 3 <= x_w <= 4:
            continue
        results = set()
        for perm in itertools.permutations((0, 1, 2)):
            e = fold_in_vertex(m, perm, 3)
            results.add(tf.classify_triangle(m, (3,) + e) >= x_w + 1)
        assert results == {True}
