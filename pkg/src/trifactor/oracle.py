"""Ground truth by exhaustive search.

Backtracking tiling search (complete, deterministic), maximum-tiling
computation, full enumeration of labelled graph spaces at small n, and
brute-force chain counting.  Everything here is slow and certain; the
solvers lean on it both as a fallback and as the referee in tests.

Backtracking always branches on the lowest-index uncovered vertex and
scans candidate pairs in lexicographic order, so results are reproducible
and an ``Absent`` answer certifies exhaustion of the whole tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .errors import InstanceTooLargeError, ParseSyntaxError
from .graphs import Digraph, SimpleGraph, StandardMultigraph, build_digraph
from .tiling import DirectedTriple, Tile, Tiling, order_as

__all__ = [
    "exact_tiling",
    "exact_weight_tiling",
    "exact_directed_tiling",
    "max_weight_tiling",
    "max_cyclic_tiling",
    "enumerate_space",
    "space_size",
    "count_chains_bruteforce",
    "ShardDescriptor",
]

DEFAULT_CAP = 15
ENUM_CAPS = {"simple": 7, "multigraph": 6, "digraph": 6}


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise InstanceTooLargeError(f"order {order} exceeds cap {cap}")


# -- exact tiling search ----------------------------------------------------


def exact_weight_tiling(
    m: StandardMultigraph,
    weights: Sequence[int],
    factor: bool = False,
    cap: int = DEFAULT_CAP,
) -> Optional[Tiling]:
    """A tiling meeting the weight multiset, or None after exhaustion.

    Each tile is assigned to the largest still-open requirement its weight
    meets; for threshold requirements that greedy assignment loses no
    solutions.
    """
    _check_cap(m.order, cap)
    want = tuple(sorted(weights, reverse=True))
    if 3 * len(want) > m.order:
        return None
    if factor and 3 * len(want) != m.order:
        return None
    mu = m.mu
    support = m.support_mask
    found: list[tuple[int, int, int, int]] = []

    def dfs(pool: int, remaining: tuple[int, ...]) -> bool:
        if not remaining:
            return (not factor) or pool == 0
        if bin(pool).count("1") < 3 * len(remaining):
            return False
        v = (pool & -pool).bit_length() - 1
        rest = pool & ~(1 << v)
        sup_v = support(v) & rest
        for u in _bits(sup_v):
            both = sup_v & support(u)
            for w in _bits(both & ~((1 << (u + 1)) - 1)):
                wt = mu(v, u) + mu(v, w) + mu(u, w)
                idx = next((i for i, r in enumerate(remaining) if r <= wt), None)
                if idx is None:
                    continue
                found.append((v, u, w, remaining[idx]))
                nxt = remaining[:idx] + remaining[idx + 1 :]
                if dfs(rest & ~(1 << u) & ~(1 << w), nxt):
                    return True
                found.pop()
        if not factor and dfs(rest, remaining):
            return True
        return False

    if dfs(m.alive, want):
        return Tiling(tuple(Tile((a, b, c), r) for a, b, c, r in found))
    return None


def max_weight_tiling(
    m: StandardMultigraph, min_weight: int, cap: int = DEFAULT_CAP
) -> Tiling:
    """A maximum-cardinality tiling by triples of weight >= min_weight."""
    _check_cap(m.order, cap)
    mu = m.mu
    support = m.support_mask
    best: list[tuple[int, int, int]] = []
    cur: list[tuple[int, int, int]] = []

    def dfs(pool: int) -> None:
        nonlocal best
        if len(cur) > len(best):
            best = cur.copy()
        if len(cur) + bin(pool).count("1") // 3 <= len(best):
            return
        if not pool:
            return
        v = (pool & -pool).bit_length() - 1
        rest = pool & ~(1 << v)
        sup_v = support(v) & rest
        for u in _bits(sup_v):
            both = sup_v & support(u)
            for w in _bits(both & ~((1 << (u + 1)) - 1)):
                if mu(v, u) + mu(v, w) + mu(u, w) >= min_weight:
                    cur.append((v, u, w))
                    dfs(rest & ~(1 << u) & ~(1 << w))
                    cur.pop()
        dfs(rest)

    dfs(m.alive)
    return Tiling(tuple(Tile(t, min_weight) for t in best))


def _cyclic_ok(d: Digraph, a: int, b: int, c: int) -> bool:
    return (d.has_arc(a, b) and d.has_arc(b, c) and d.has_arc(c, a)) or (
        d.has_arc(a, c) and d.has_arc(c, b) and d.has_arc(b, a)
    )


def _transitive_ok(d: Digraph, a: int, b: int, c: int) -> bool:
    for x, y, z in itertools.permutations((a, b, c)):
        if d.has_arc(x, y) and d.has_arc(y, z) and d.has_arc(x, z):
            return True
    return False


def exact_directed_tiling(
    d: Digraph,
    cyclic: int,
    transitive: int,
    factor: bool = False,
    cap: int = DEFAULT_CAP,
) -> Optional[list[DirectedTriple]]:
    """A tiling by ``cyclic`` cyclic and ``transitive`` transitive triangles.

    Returns realized ordered triples, or None after exhausting the tree.
    """
    _check_cap(d.n, cap)
    k = cyclic + transitive
    if 3 * k > d.n or (factor and 3 * k != d.n):
        return None
    chosen: list[tuple[int, int, int, bool, bool]] = []

    def feasible(nc_only: int, nt_only: int) -> bool:
        return nc_only <= cyclic and nt_only <= transitive

    def dfs(pool: int, left: int, nc_only: int, nt_only: int) -> bool:
        if left == 0:
            if factor and pool:
                return False
            return feasible(nc_only, nt_only)
        if bin(pool).count("1") < 3 * left:
            return False
        v = (pool & -pool).bit_length() - 1
        rest = pool & ~(1 << v)
        for u in _bits(rest):
            for w in _bits(rest & ~((1 << (u + 1)) - 1)):
                can_c = _cyclic_ok(d, v, u, w)
                can_t = _transitive_ok(d, v, u, w)
                if not (can_c or can_t):
                    continue
                dc = nc_only + (1 if can_c and not can_t else 0)
                dt = nt_only + (1 if can_t and not can_c else 0)
                if not feasible(dc, dt):
                    continue
                chosen.append((v, u, w, can_c, can_t))
                if dfs(rest & ~(1 << u) & ~(1 << w), left - 1, dc, dt):
                    return True
                chosen.pop()
        if not factor and dfs(rest, left, nc_only, nt_only):
            return True
        return False

    if not dfs((1 << d.n) - 1, k, 0, 0):
        return None
    # assign kinds: forced tiles first, then flexible ones fill cyclic slots
    out: list[DirectedTriple] = []
    c_left = cyclic - sum(1 for t in chosen if t[3] and not t[4])
    for v, u, w, can_c, can_t in chosen:
        if can_c and not can_t:
            kind = "cyclic"
        elif can_t and not can_c:
            kind = "transitive"
        elif c_left > 0:
            kind = "cyclic"
            c_left -= 1
        else:
            kind = "transitive"
        ordered = order_as(d, (v, u, w), kind)
        assert ordered is not None
        out.append(ordered)
    return out


def max_cyclic_tiling(d: Digraph, cap: int = DEFAULT_CAP) -> int:
    """Exact maximum number of disjoint cyclic triangles."""
    _check_cap(d.n, cap)
    best = 0

    def dfs(pool: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if count + bin(pool).count("1") // 3 <= best or not pool:
            return
        v = (pool & -pool).bit_length() - 1
        rest = pool & ~(1 << v)
        for u in _bits(rest):
            for w in _bits(rest & ~((1 << (u + 1)) - 1)):
                if _cyclic_ok(d, v, u, w):
                    dfs(rest & ~(1 << u) & ~(1 << w), count + 1)
        dfs(rest, count)

    dfs((1 << d.n) - 1, 0)
    return best


GraphLike = Union[StandardMultigraph, SimpleGraph, Digraph]


def exact_tiling(
    g: GraphLike,
    spec,
    factor: bool = False,
    cap: int = DEFAULT_CAP,
):
    """Dispatching front end for the exact searches.

    For multigraphs (and simple graphs) ``spec`` is a sequence of required
    tile weights.  For digraphs ``spec`` is a pair (cyclic, transitive).
    """
    if isinstance(g, Digraph):
        c, t = spec
        return exact_directed_tiling(g, c, t, factor=factor, cap=cap)
    if isinstance(g, SimpleGraph):
        g = g.to_multigraph()
    return exact_weight_tiling(g, tuple(spec), factor=factor, cap=cap)


# -- labelled graph-space enumeration ----------------------------------------


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for v in range(n) for u in range(v)]


def space_size(n: int, kind: str) -> int:
    base = {"simple": 2, "multigraph": 3, "digraph": 4}[kind]
    return base ** (n * (n - 1) // 2)


def _decode(n: int, kind: str, digits: Sequence[int]) -> GraphLike:
    pairs = _pair_list(n)
    if kind == "simple":
        adj = [0] * n
        for (u, v), dig in zip(pairs, digits):
            if dig:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return SimpleGraph(n, adj)
    if kind == "multigraph":
        tri = bytes(int(dig) for dig in digits)
        return StandardMultigraph(n, tri)
    arcs = []
    for (u, v), dig in zip(pairs, digits):
        if dig in (1, 3):
            arcs.append((u, v))
        if dig in (2, 3):
            arcs.append((v, u))
    return build_digraph(n, arcs)


def enumerate_space(
    n: int,
    kind: str,
    delta_min: Optional[int] = None,
    shard_index: int = 0,
    shard_count: int = 1,
    chunk: int = 1 << 16,
) -> Iterator[GraphLike]:
    """Yield every labelled graph of the kind, in increasing code order.

    Codes are mixed-radix integers over the triangular pair list (little
    endian).  ``delta_min`` filters by minimum degree (total degree for
    digraphs) using a vectorized pass, so dense filters over large spaces
    stay cheap.  Sharding splits the code range into ``shard_count``
    contiguous blocks.
    """
    if kind not in ENUM_CAPS:
        raise ValueError(f"unknown kind {kind!r}")
    if n > ENUM_CAPS[kind]:
        raise InstanceTooLargeError(f"{kind} enumeration capped at n={ENUM_CAPS[kind]}")
    if not 0 <= shard_index < shard_count:
        raise ValueError("bad shard index")
    base = {"simple": 2, "multigraph": 3, "digraph": 4}[kind]
    npairs = n * (n - 1) // 2
    total = space_size(n, kind)
    lo = total * shard_index // shard_count
    hi = total * (shard_index + 1) // shard_count
    pairs = _pair_list(n)
    inc = np.zeros((npairs, n), dtype=np.int64)
    for j, (u, v) in enumerate(pairs):
        inc[j, u] = 1
        inc[j, v] = 1
    powers = np.array([base**j for j in range(npairs)], dtype=np.int64)
    # degree contribution per digit value
    weight_lut = np.array(
        {"simple": [0, 1], "multigraph": [0, 1, 2], "digraph": [0, 1, 1, 2]}[kind],
        dtype=np.int64,
    )
    start = lo
    while start < hi:
        stop = min(start + chunk, hi)
        codes = np.arange(start, stop, dtype=np.int64)
        digits = (codes[:, None] // powers[None, :]) % base
        if delta_min is not None:
            degs = weight_lut[digits] @ inc
            keep = degs.min(axis=1) >= delta_min
            digits = digits[keep]
        for row in digits:
            yield _decode(n, kind, row.tolist())
        start = stop


# -- chain counting -----------------------------------------------------------


def count_chains_bruteforce(m: StandardMultigraph, u: int, v: int, k: int) -> int:
    """Number of ordered (3k-1)-tuples forming a k-chain joining u and v.

    Tuple entries are distinct vertices avoiding u and v; positions
    3i-2, 3i-1 carry heavy pairs, every inner link has weight >= 3 into the
    pairs on both sides, u attaches to the first pair and v to any pair.
    Joining presumes distinct endpoints: u == v counts 0 by convention.
    """
    if m.order > 12 or k > 2:
        raise InstanceTooLargeError("chain brute force capped at n=12, k=2")
    if k < 1 or u == v or not (m.is_alive(u) and m.is_alive(v)):
        return 0
    mu = m.mu
    verts = [w for w in m.vertices() if w != u and w != v]
    count = 0
    if k == 1:
        for z1, z2 in itertools.permutations(verts, 2):
            if mu(z1, z2) != 2:
                continue
            if mu(u, z1) + mu(u, z2) >= 3 and mu(v, z1) + mu(v, z2) >= 3:
                count += 1
        return count
    for tup in itertools.permutations(verts, 5):
        z1, z2, z3, z4, z5 = tup
        if mu(z1, z2) != 2 or mu(z4, z5) != 2:
            continue
        if mu(z3, z1) + mu(z3, z2) < 3 or mu(z3, z4) + mu(z3, z5) < 3:
            continue
        if mu(u, z1) + mu(u, z2) < 3:
            continue
        if mu(v, z1) + mu(v, z2) >= 3 or mu(v, z4) + mu(v, z5) >= 3:
            count += 1
    return count


# -- shard descriptors --------------------------------------------------------


@dataclass(frozen=True)
class ShardDescriptor:
    """One line describing a shard of an enumeration sweep."""

    kind: str
    n: int
    delta_min: Optional[int]
    shard_index: int
    shard_count: int

    def line(self) -> str:
        filt = "all" if self.delta_min is None else f"delta>={self.delta_min}"
        return f"{self.kind} {self.n} {filt} {self.shard_index}/{self.shard_count}"

    @classmethod
    def parse(cls, line: str) -> "ShardDescriptor":
        parts = line.split()
        if len(parts) != 4 or "/" not in parts[3]:
            raise ParseSyntaxError(f"bad shard descriptor {line!r}", 1)
        kind, n_s, filt, shard = parts
        if filt == "all":
            dm = None
        elif filt.startswith("delta>="):
            dm = int(filt[len("delta>=") :])
        else:
            raise ParseSyntaxError(f"bad filter {filt!r}", 1)
        idx_s, cnt_s = shard.split("/", 1)
        return cls(kind, int(n_s), dm, int(idx_s), int(cnt_s))
