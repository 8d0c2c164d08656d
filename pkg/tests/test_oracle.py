"""Exhaustive search oracle: enumeration, exact tilings, chain counts."""

import itertools
import random

import pytest

import trifactor as tf
from trifactor.oracle import ShardDescriptor


def test_space_sizes():
    assert tf.space_size(3, "multigraph") == 27
    assert tf.space_size(6, "simple") == 32768
    assert tf.space_size(3, "digraph") == 64
    assert sum(1 for _ in tf.enumerate_space(3, "multigraph")) == 27
    assert sum(1 for _ in tf.enumerate_space(3, "digraph")) == 64
    assert sum(1 for _ in tf.enumerate_space(4, "simple")) == 64


def test_enumeration_filter_micro():
    filtered = list(tf.enumerate_space(3, "multigraph", delta_min=3))
    assert len(filtered) == 4
    for g in filtered:
        assert g.min_degree() >= 3


def test_enumeration_cap():
    with pytest.raises(tf.InstanceTooLargeError):
        next(tf.enumerate_space(8, "simple"))
    with pytest.raises(tf.InstanceTooLargeError):
        next(tf.enumerate_space(7, "multigraph"))


def test_enumeration_simple_n7_boundary():
    # n=7 is the simple-graph cap; a tight degree filter keeps the pass cheap
    found = list(tf.enumerate_space(7, "simple", delta_min=6))
    assert len(found) == 1  # only the complete graph
    assert found[0].edge_count() == 21


def test_shard_union_matches_unsharded():
    def texts(it):
        out = []
        for g in it:
            if isinstance(g, tf.SimpleGraph):
                g = g.to_multigraph()
            out.append(tf.format_graph(g))
        return out

    full = texts(tf.enumerate_space(4, "multigraph", delta_min=4))
    for count in (2, 3, 7):
        sharded = []
        for i in range(count):
            sharded.extend(
                texts(
                    tf.enumerate_space(
                        4, "multigraph", delta_min=4, shard_index=i, shard_count=count
                    )
                )
            )
        assert sharded == full


def test_shard_descriptor_roundtrip():
    d = ShardDescriptor("multigraph", 6, 7, 3, 8)
    assert ShardDescriptor.parse(d.line()) == d
    d2 = ShardDescriptor("simple", 6, None, 0, 1)
    assert ShardDescriptor.parse(d2.line()) == d2
    with pytest.raises(tf.ParseError):
        ShardDescriptor.parse("garbage")


def test_exact_tiling_examples():
    k6 = tf.build_simple_graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6)])
    assert tf.exact_tiling(k6, (3, 3), factor=True) is not None
    ex1 = tf.cyclic_tiling_extremal(4)
    assert tf.exact_tiling(ex1.graph, (3, 0), factor=True) is None
    ex2 = tf.triangle_factor_extremal(3)
    m2 = tf.underlying_multigraph(ex2.graph)
    assert tf.exact_weight_tiling(m2, (3, 3, 3), factor=True) is None


def test_exact_tiling_respects_requirements():
    m = tf.heavy_split_extremal(4).graph
    found = tf.exact_weight_tiling(m, (5, 5), factor=False)
    rep = tf.validate_tiling(m, found, (5, 5))
    assert rep.valid
    assert tf.exact_weight_tiling(m, (5, 5, 5), factor=True) is None


def test_exact_cap():
    m = tf.random_multigraph(16, random.Random(0), 0.9, 0.1)
    with pytest.raises(tf.InstanceTooLargeError):
        tf.exact_weight_tiling(m, (3,) * 5)
    # explicit cap override admits larger instances
    big = tf.random_multigraph_min_degree(18, random.Random(1), 30)
    assert tf.exact_weight_tiling(big, (5,) * 6, factor=True, cap=20) is not None


def test_max_cyclic_examples():
    assert tf.max_cyclic_tiling(tf.cyclic_tiling_extremal(4).graph) == 2
    k9 = tf.build_digraph(9, [(u, v) for u in range(9) for v in range(9) if u != v])
    assert tf.max_cyclic_tiling(k9) == 3
    tournament = tf.build_digraph(6, [(u, v) for u in range(6) for v in range(u + 1, 6)])
    assert tf.max_cyclic_tiling(tournament) == 0


def test_exact_directed_split():
    k6 = tf.build_digraph(6, [(u, v) for u in range(6) for v in range(6) if u != v])
    got = tf.exact_directed_tiling(k6, cyclic=1, transitive=1, factor=True)
    assert got is not None and sorted(t.kind for t in got) == ["cyclic", "transitive"]
    for t in got:
        for a, b in t.arcs():
            assert k6.has_arc(a, b)


def test_relabeling_invariance():
    rng = random.Random(77)
    for _ in range(40):
        n = rng.randint(4, 8)
        m = tf.random_multigraph(n, rng, 0.5, 0.3)
        perm = list(range(n))
        rng.shuffle(perm)
        relabeled = tf.build_multigraph(
            n, [(perm[u], perm[v], w) for u, v, w in m.pairs()]
        )
        k = n // 3
        for weights in ((4,) * k, (5,) * k):
            a = tf.exact_weight_tiling(m, weights)
            b = tf.exact_weight_tiling(relabeled, weights)
            assert (a is None) == (b is None)
        assert len(tf.max_weight_tiling(m, 4)) == len(tf.max_weight_tiling(relabeled, 4))


def test_chain_counts_examples():
    k5 = tf.build_multigraph(5, [(u, v, 2) for u in range(5) for v in range(u + 1, 5)])
    assert tf.count_chains_bruteforce(k5, 0, 1, 1) == 6
    assert tf.count_chains_bruteforce(k5, 0, 0, 1) == 0
    light = tf.build_multigraph(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
    assert tf.count_chains_bruteforce(light, 0, 1, 1) == 0


def test_chain_counts_match_permutation_definition():
    # independent re-derivation with explicit tuple conditions
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(5, 7)
        m = tf.random_multigraph(n, rng, 0.55, 0.25)
        u, v = rng.sample(range(n), 2)
        expect = 0
        verts = [x for x in range(n) if x not in (u, v)]
        for z1, z2 in itertools.permutations(verts, 2):
            if m.mu(z1, z2) != 2:
                continue
            if m.mu(u, z1) + m.mu(u, z2) >= 3 and m.mu(v, z1) + m.mu(v, z2) >= 3:
                expect += 1
        assert tf.count_chains_bruteforce(m, u, v, 1) == expect
