"""Seeded random graph instances for sweeps, probes, and tests.

All generators draw from ``random.Random`` (Mersenne Twister) with an
explicit seed, so every experiment is reproducible from its command line.
Min-degree variants repair deficits deterministically instead of rejecting
forever: the lowest-degree vertex gets its lexicographically first
upgradeable pair bumped until the target is met.
"""

from __future__ import annotations

import random
from typing import Optional

from .graphs import (
    Digraph,
    SimpleGraph,
    StandardMultigraph,
    build_digraph,
    build_multigraph,
    build_simple_graph,
)

__all__ = [
    "random_multigraph",
    "random_multigraph_min_degree",
    "random_simple_graph",
    "random_digraph",
    "random_digraph_min_semidegree",
]


def random_multigraph(
    n: int, rng: random.Random, p2: float = 0.3, p1: float = 0.3
) -> StandardMultigraph:
    """Each pair independently heavy with p2, light with p1, absent otherwise."""
    entries = []
    for v in range(n):
        for u in range(v):
            r = rng.random()
            if r < p2:
                entries.append((u, v, 2))
            elif r < p2 + p1:
                entries.append((u, v, 1))
    return build_multigraph(n, entries)


def random_multigraph_min_degree(
    n: int,
    rng: random.Random,
    delta_min: int,
    p2: float = 0.6,
    p1: float = 0.25,
) -> StandardMultigraph:
    """Random multigraph repaired upward until min degree >= delta_min."""
    if delta_min > 2 * (n - 1):
        raise ValueError(f"delta_min {delta_min} impossible at n={n}")
    mult = [[0] * n for _ in range(n)]
    deg = [0] * n
    for v in range(n):
        for u in range(v):
            r = rng.random()
            w = 2 if r < p2 else 1 if r < p2 + p1 else 0
            mult[u][v] = mult[v][u] = w
            deg[u] += w
            deg[v] += w
    while True:
        v = min(range(n), key=lambda x: (deg[x], x))
        if deg[v] >= delta_min:
            break
        for u in range(n):
            if u != v and mult[u][v] < 2:
                mult[u][v] += 1
                mult[v][u] += 1
                deg[u] += 1
                deg[v] += 1
                break
    entries = [
        (u, v, mult[u][v]) for v in range(n) for u in range(v) if mult[u][v]
    ]
    return build_multigraph(n, entries)


def random_simple_graph(n: int, rng: random.Random, p: float = 0.5) -> SimpleGraph:
    edges = [
        (u, v) for v in range(n) for u in range(v) if rng.random() < p
    ]
    return build_simple_graph(n, edges)


def random_digraph(n: int, rng: random.Random, p: float = 0.5) -> Digraph:
    """Each ordered pair carries an arc independently with probability p."""
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < p
    ]
    return build_digraph(n, arcs)


def random_digraph_min_semidegree(
    n: int,
    rng: random.Random,
    semi_min: int,
    p: float = 0.8,
    max_rejects: int = 64,
) -> Digraph:
    """Random digraph conditioned on min semidegree >= semi_min.

    Rejection-samples first; after ``max_rejects`` misses the current draw
    is repaired by adding the lexicographically first missing arcs at
    deficient vertices (slight bias, full determinism).
    """
    if semi_min > n - 1:
        raise ValueError(f"semi_min {semi_min} impossible at n={n}")
    last: Optional[list[list[bool]]] = None
    for _ in range(max_rejects):
        has = [[False] * n for _ in range(n)]
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < p:
                    has[u][v] = True
        last = has
        if _semi_ok(has, n, semi_min):
            return _to_digraph(has, n)
    assert last is not None
    for v in range(n):
        while sum(last[v]) < semi_min:
            u = next(u for u in range(n) if u != v and not last[v][u])
            last[v][u] = True
        while sum(last[u][v] for u in range(n)) < semi_min:
            u = next(u for u in range(n) if u != v and not last[u][v])
            last[u][v] = True
    return _to_digraph(last, n)


def _semi_ok(has: list[list[bool]], n: int, semi_min: int) -> bool:
    for v in range(n):
        if sum(has[v]) < semi_min:
            return False
        if sum(has[u][v] for u in range(n)) < semi_min:
            return False
    return True


def _to_digraph(has: list[list[bool]], n: int) -> Digraph:
    return build_digraph(
        n, [(u, v) for u in range(n) for v in range(n) if has[u][v]]
    )
