"""Constructive tiling solvers.

Each solver runs a deterministic best-first local search whose move set is
a family of small exchanges: add a tile from uncovered vertices, split one
or two tiles plus uncovered vertices into more tiles, upgrade tile weight
classes pairwise, or rotate the leftover triple against a tile to improve
its weight.  Under the degree thresholds the target configuration always
exists and some move fires at every non-final state; a stall is loud (it
means a bug or a genuine counterexample) and triggers the exact fallback.

The fallback is engaged automatically for instances with at most 15 live
vertices, so on that range Found/Absent answers are definitive.  Above it
a failed search reports ``unknown``, never ``absent``.

Vertex-count residues mod 3 reduce to the divisible case by deleting the
lowest live vertex or appending a dominating vertex; tiles are always
reported in the caller's vertex indices.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import oracle
from .errors import BadSplitError, NotDivisibleBy3Error, NotRealizableError
from .graphs import (
    Digraph,
    SimpleGraph,
    StandardMultigraph,
    add_dominating_vertex,
    underlying_multigraph,
)
from .tiling import (
    DirectedTriple,
    Tile,
    Tiling,
    order_as,
    realize_directed,
    triple_weight,
    validate_tiling,
)

__all__ = [
    "ExchangeMove",
    "SolveOutcome",
    "solve_triangle_factor",
    "solve_weight4_tiling",
    "solve_weight5_tiling",
    "solve_mixed_tiling",
    "solve_directed_mixed",
    "solve_cyclic_tiling",
]

log = logging.getLogger(__name__)

FOUND = "found"
ABSENT = "absent"
UNKNOWN = "unknown"

# lexicographic-first splits of 6 (resp. 9) slots into unordered triples;
# fixing slot 0 in the first part kills the part-order symmetry
_SPLITS2 = [
    ((0,) + rest, tuple(i for i in range(1, 6) if i not in rest))
    for rest in itertools.combinations(range(1, 6), 2)
]
_SPLITS3 = []
for _rest in itertools.combinations(range(1, 9), 2):
    _p1 = (0,) + _rest
    _left = [i for i in range(1, 9) if i not in _rest]
    _h = _left[0]
    for _r2 in itertools.combinations(_left[1:], 2):
        _p2 = (_h,) + _r2
        _p3 = tuple(i for i in _left[1:] if i not in _r2)
        _SPLITS3.append((_p1, _p2, _p3))

_WTRIPLE_CAP = 512  # lex prefix of uncovered triples scanned per move


@dataclass(frozen=True)
class ExchangeMove:
    """One applied rewrite: which rule fired, what it removed and inserted."""

    rule: str
    removed: tuple[tuple[int, int, int], ...]
    inserted: tuple[tuple[int, int, int], ...]


@dataclass
class SolveOutcome:
    """Result of one solve call.

    ``status`` is found / absent / unknown; ``tiling`` is the target-meeting
    tiling when found, ``best`` the best tiling reached either way.
    """

    status: str
    tiling: Optional[Tiling]
    best: Tiling
    target: int
    trace: tuple[str, ...] = ()
    moves: tuple[ExchangeMove, ...] = ()
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _State:
    """Mutable search state: disjoint triples over a fixed multigraph."""

    __slots__ = ("m", "tiles", "covered", "trace", "moves", "iters", "measures")

    def __init__(self, m: StandardMultigraph):
        self.m = m
        self.tiles: list[tuple[int, int, int]] = []
        self.covered = 0
        self.trace: list[str] = []
        self.moves: list[ExchangeMove] = []
        self.iters = 0
        self.measures: list[tuple] = []

    def uncovered(self) -> int:
        return self.m.alive & ~self.covered

    def weight(self, t: tuple[int, int, int]) -> int:
        w = triple_weight(self.m, *t)
        if w is None:
            raise NotRealizableError(f"tile {t} stopped being a triangle")
        return w

    def counts(self) -> tuple[int, int, int]:
        n4 = n5 = 0
        for t in self.tiles:
            w = self.weight(t)
            if w >= 4:
                n4 += 1
            if w >= 5:
                n5 += 1
        return len(self.tiles), n4, n5

    def apply(self, rule: str, remove: Sequence[int], insert: Sequence[tuple[int, int, int]]) -> None:
        removed = tuple(self.tiles[i] for i in remove)
        for i in sorted(remove, reverse=True):
            del self.tiles[i]
        inserted = tuple(tuple(sorted(t)) for t in insert)
        self.tiles.extend(inserted)
        self.covered = 0
        for t in self.tiles:
            self.covered |= (1 << t[0]) | (1 << t[1]) | (1 << t[2])
        self.trace.append(rule)
        self.moves.append(ExchangeMove(rule, removed, inserted))
        self.iters += 1


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _greedy(state: _State, min_w: int) -> None:
    """Maximum-weight disjoint triples in lexicographic vertex order."""
    m = state.m
    pool = state.uncovered()
    while pool:
        v = (pool & -pool).bit_length() - 1
        rest = pool & ~(1 << v)
        best = None
        best_w = min_w - 1
        sup_v = m.support_mask(v) & rest
        for u in _bits(sup_v):
            both = sup_v & m.support_mask(u) & ~((1 << (u + 1)) - 1)
            for w in _bits(both):
                wt = m.mu(v, u) + m.mu(v, w) + m.mu(u, w)
                if wt > best_w:
                    best_w = wt
                    best = (v, u, w)
        if best is None:
            pool = rest
        else:
            state.apply("greedy", (), [best])
            pool &= ~((1 << best[0]) | (1 << best[1]) | (1 << best[2]))


def _find_add(state: _State, min_w: int) -> bool:
    """Add the lexicographically first uncovered triple of enough weight."""
    m = state.m
    pool = state.uncovered()
    for v in _bits(pool):
        sup_v = m.support_mask(v) & pool & ~((1 << (v + 1)) - 1)
        for u in _bits(sup_v):
            both = sup_v & m.support_mask(u) & ~((1 << (u + 1)) - 1)
            for w in _bits(both):
                if m.mu(v, u) + m.mu(v, w) + m.mu(u, w) >= min_w:
                    state.apply("grow", (), [(v, u, w)])
                    return True
    return False


def _uncovered_triples(state: _State):
    unc = sorted(_bits(state.uncovered()))
    return itertools.islice(itertools.combinations(unc, 3), _WTRIPLE_CAP)


def _swap_one(state: _State, min_w: int) -> bool:
    """Tile + three uncovered vertices -> two tiles (net +1 tile)."""
    m = state.m
    for wtrip in _uncovered_triples(state):
        for bi, b in enumerate(state.tiles):
            pool = sorted(b + wtrip)
            for s1, s2 in _SPLITS2:
                p1 = tuple(pool[i] for i in s1)
                w1 = triple_weight(m, *p1)
                if w1 is None or w1 < min_w:
                    continue
                p2 = tuple(pool[i] for i in s2)
                w2 = triple_weight(m, *p2)
                if w2 is None or w2 < min_w:
                    continue
                state.apply("swap-one", (bi,), [p1, p2])
                return True
    return False


def _swap_two(state: _State, min_w: int) -> bool:
    """Two tiles + three uncovered vertices -> three tiles (net +1 tile)."""
    m = state.m
    for wtrip in _uncovered_triples(state):
        for bi, ci in itertools.combinations(range(len(state.tiles)), 2):
            pool = sorted(state.tiles[bi] + state.tiles[ci] + wtrip)
            for s1, s2, s3 in _SPLITS3:
                p1 = tuple(pool[i] for i in s1)
                w1 = triple_weight(m, *p1)
                if w1 is None or w1 < min_w:
                    continue
                p2 = tuple(pool[i] for i in s2)
                w2 = triple_weight(m, *p2)
                if w2 is None or w2 < min_w:
                    continue
                p3 = tuple(pool[i] for i in s3)
                w3 = triple_weight(m, *p3)
                if w3 is None or w3 < min_w:
                    continue
                state.apply("swap-two", (bi, ci), [p1, p2, p3])
                return True
    return False


def _grow_loop(state: _State, min_w: int, target: int, cap: int) -> None:
    while len(state.tiles) < target and state.iters < cap:
        if _find_add(state, min_w):
            continue
        if _swap_one(state, min_w):
            continue
        if _swap_two(state, min_w):
            continue
        break


def _upgrade_to4(state: _State, cap: int) -> None:
    """Repartition a light tile with a partner until every tile has weight 4."""
    m = state.m
    changed = True
    while changed and state.iters < cap:
        changed = False
        for ai, a in enumerate(state.tiles):
            if state.weight(a) >= 4:
                continue
            for bi, b in enumerate(state.tiles):
                if bi == ai:
                    continue
                pool = sorted(a + b)
                for s1, s2 in _SPLITS2:
                    p1 = tuple(pool[i] for i in s1)
                    w1 = triple_weight(m, *p1)
                    if w1 is None or w1 < 4:
                        continue
                    p2 = tuple(pool[i] for i in s2)
                    w2 = triple_weight(m, *p2)
                    if w2 is None or w2 < 4:
                        continue
                    state.apply("upgrade-four", (ai, bi), [p1, p2])
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break


def _light_pairs_within(m: StandardMultigraph, verts: Sequence[int]) -> list[tuple[int, int]]:
    return [
        (x, y)
        for x, y in itertools.combinations(sorted(verts), 2)
        if m.mu(x, y) == 1
    ]


def _upgrade_to5(state: _State, cap: int) -> None:
    """Trade a weight-4 tile against a partner for one more weight-5 tile.

    The pool is the two tiles plus (when the residue leaves one) the lowest
    uncovered vertex; one pool vertex may be left over.  When the partner
    tile also has weight 4, one of its light pairs may count one extra --
    the tile carrying it still ends at true weight >= 4 while the other
    part reaches a true 5, which is exactly a +1 in the weight-5 count.
    """
    m = state.m
    changed = True
    while changed and state.iters < cap:
        changed = False
        for ai, a in enumerate(state.tiles):
            if state.weight(a) != 4:
                continue
            unc = state.uncovered()
            extra = (unc & -unc).bit_length() - 1 if unc else None
            for bi, b in enumerate(state.tiles):
                if bi == ai:
                    continue
                wb = state.weight(b)
                base = list(a + b)
                pools = [base] if extra is None else [base + [extra]]
                for pool_all in pools:
                    leftovers = [None] if len(pool_all) == 6 else sorted(pool_all)
                    for out in leftovers:
                        six = sorted(x for x in pool_all if x != out)
                        if len(six) != 6:
                            continue
                        bonus_pairs = _light_pairs_within(m, b) if wb == 4 else []
                        done = _try_five_split(state, ai, bi, six, bonus_pairs)
                        if done:
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break


def _try_five_split(
    state: _State,
    ai: int,
    bi: int,
    six: list[int],
    bonus_pairs: list[tuple[int, int]],
) -> bool:
    m = state.m
    for s1, s2 in _SPLITS2:
        p1 = tuple(six[i] for i in s1)
        p2 = tuple(six[i] for i in s2)
        w1 = triple_weight(m, *p1)
        w2 = triple_weight(m, *p2)
        if w1 is None or w2 is None:
            continue
        if w1 >= 5 and w2 >= 5:
            state.apply("upgrade-five", (ai, bi), [p1, p2])
            return True
        for bp in bonus_pairs:
            in1 = bp[0] in p1 and bp[1] in p1
            in2 = bp[0] in p2 and bp[1] in p2
            if in1 and w1 >= 4 and w2 >= 5:
                state.apply("upgrade-five-slack", (ai, bi), [p1, p2])
                return True
            if in2 and w2 >= 4 and w1 >= 5:
                state.apply("upgrade-five-slack", (ai, bi), [p1, p2])
                return True
    return False


# -- leftover endgame for the mixed solver -----------------------------------


def _leftover_measure(m: StandardMultigraph, verts: Sequence[int]) -> tuple[int, int]:
    hw = 0
    tot = 0
    for x, y in itertools.combinations(verts, 2):
        mu = m.mu(x, y)
        tot += mu
        if mu == 2:
            hw += 1
    return hw, tot


def _finish_pair(state: _State) -> bool:
    """Leftover triple + one tile -> a weight-5 and a weight-4 tile (factor)."""
    m = state.m
    w_verts = sorted(_bits(state.uncovered()))
    for bi, b in enumerate(state.tiles):
        pool = sorted(b + tuple(w_verts))
        for s1, s2 in _SPLITS2:
            p1 = tuple(pool[i] for i in s1)
            p2 = tuple(pool[i] for i in s2)
            w1 = triple_weight(m, *p1)
            w2 = triple_weight(m, *p2)
            if w1 is None or w2 is None:
                continue
            if (w1 >= 5 and w2 >= 4) or (w1 >= 4 and w2 >= 5):
                state.apply("finish-pair", (bi,), [p1, p2])
                return True
    return False


def _finish_triple(state: _State) -> bool:
    """Leftover triple + two tiles -> two weight-5 tiles and a weight-4 tile."""
    m = state.m
    w_verts = tuple(sorted(_bits(state.uncovered())))
    for bi, ci in itertools.combinations(range(len(state.tiles)), 2):
        pool = sorted(state.tiles[bi] + state.tiles[ci] + w_verts)
        for s1, s2, s3 in _SPLITS3:
            parts = [tuple(pool[i] for i in s) for s in (s1, s2, s3)]
            ws = [triple_weight(m, *p) for p in parts]
            if any(w is None for w in ws):
                continue
            got = sorted((w for w in ws), reverse=True)  # type: ignore[arg-type]
            if got[0] >= 5 and got[1] >= 5 and got[2] >= 4:
                state.apply("finish-triple", (bi, ci), parts)
                return True
    return False


def _leftover_boost(state: _State) -> bool:
    """Rotate the leftover triple against a tile, keeping a weight-5 tile
    and strictly improving the (heavy pairs, total weight) of the leftover."""
    m = state.m
    w_verts = sorted(_bits(state.uncovered()))
    cur = _leftover_measure(m, w_verts)
    for bi, b in enumerate(state.tiles):
        pool = sorted(b + tuple(w_verts))
        for s1, s2 in _SPLITS2:
            p1 = tuple(pool[i] for i in s1)
            p2 = tuple(pool[i] for i in s2)
            for keep, rest in ((p1, p2), (p2, p1)):
                wk = triple_weight(m, *keep)
                if wk is None or wk < 5:
                    continue
                if _leftover_measure(m, rest) > cur:
                    state.apply("leftover-boost", (bi,), [keep])
                    return True
    return False


# -- case reductions and outcome assembly -------------------------------------


def _iter_cap(m: StandardMultigraph) -> int:
    return max(64, m.order**3)


def _dominate_residue2(m: StandardMultigraph):
    """Residue 2 mod 3 reduces by appending a heavy dominating vertex; the
    tile containing it is dropped afterwards.  Residues 0 and 1 are handled
    inside each engine core (residue 1 either masks a vertex or keeps the
    leftover vertex available to the exchanges, depending on the engine)."""
    if m.order % 3 == 2:
        plus = add_dominating_vertex(m)
        return plus, plus.n - 1
    return m, None


def _mask_residue1(work: StandardMultigraph) -> StandardMultigraph:
    if work.order % 3 == 1:
        v = (work.alive & -work.alive).bit_length() - 1
        return work.delete(v)
    return work


def _engine_outcome(
    m: StandardMultigraph,
    core,
    required_for: "callable",
    spec_for_oracle: "callable",
    name: str,
    guaranteed: bool,
) -> SolveOutcome:
    """Run ``core`` on the residue-reduced graph, then fall back if needed."""
    k = m.order // 3
    work, dominator = _dominate_residue2(m)
    state = core(work)
    tiles = state.tiles
    if dominator is not None:
        tiles = [t for t in tiles if dominator not in t]
    best = Tiling(tuple(Tile(t, 3) for t in tiles))
    stats = {
        "iterations": state.iters,
        "fallback_used": False,
        "stalled": False,
        "measures": state.measures,
    }
    required = required_for(k)
    if len(tiles) == k:
        report = validate_tiling(m, [Tile(t) for t in tiles], required)
        if report.valid:
            tiling = _retag(m, tiles, required)
            return SolveOutcome(FOUND, tiling, tiling, k, tuple(state.trace), tuple(state.moves), stats)
        raise NotRealizableError(f"{name}: engine produced invalid tiling: {report.failures}")
    stats["stalled"] = True
    if guaranteed:
        log.warning(
            "%s: exchange search stalled on a degree-qualified instance "
            "(order=%d, delta=%d); falling back", name, m.order, m.min_degree()
        )
    if m.order <= oracle.DEFAULT_CAP:
        stats["fallback_used"] = True
        exact = oracle.exact_weight_tiling(m, spec_for_oracle(k))
        if exact is not None:
            report = validate_tiling(m, exact, required)
            if not report.valid:
                raise NotRealizableError(f"{name}: oracle tiling invalid: {report.failures}")
            return SolveOutcome(FOUND, exact, exact, k, tuple(state.trace) + ("fallback",), tuple(state.moves), stats)
        return SolveOutcome(ABSENT, None, best, k, tuple(state.trace) + ("fallback",), tuple(state.moves), stats)
    return SolveOutcome(UNKNOWN, None, best, k, tuple(state.trace), tuple(state.moves), stats)


def _retag(m: StandardMultigraph, tiles, required: Sequence[int]) -> Tiling:
    """Attach required-weight tags: heaviest achieved serves largest class."""
    req = sorted(required, reverse=True)
    order = sorted(tiles, key=lambda t: (-(triple_weight(m, *t) or 0), t))
    tagged = [Tile(t, r) for t, r in zip(order, req)]
    return Tiling(tuple(tagged))


# -- public solvers ------------------------------------------------------------


def solve_triangle_factor(g: SimpleGraph | StandardMultigraph) -> SolveOutcome:
    """Partition a simple graph into triangles (requires 3 | order).

    Guaranteed to succeed when the minimum degree is at least 2n/3; below
    that it is a best-effort search with a certified answer up to 15
    vertices.
    """
    m = g.to_multigraph() if isinstance(g, SimpleGraph) else g
    if m.order % 3:
        raise NotDivisibleBy3Error(f"order {m.order} not divisible by 3")
    guaranteed = 3 * m.min_degree() >= 2 * m.order

    def core(work: StandardMultigraph) -> _State:
        state = _State(work)
        cap = _iter_cap(work)
        target = work.order // 3
        _greedy(state, 3)
        state.measures.append((len(state.tiles),))
        while len(state.tiles) < target and state.iters < cap:
            if not (_find_add(state, 3) or _swap_one(state, 3) or _swap_two(state, 3)):
                break
            state.measures.append((len(state.tiles),))
        return state

    return _engine_outcome(
        m, core, lambda k: (3,) * k, lambda k: (3,) * k, "triangle-factor", guaranteed
    )


def _drop_below(state: _State, min_w: int) -> None:
    # tiles that never reached the class leave the count short, which routes
    # the caller into its fallback
    keep = [t for t in state.tiles if state.weight(t) >= min_w]
    if len(keep) != len(state.tiles):
        state.tiles = keep
        state.covered = 0
        for t in keep:
            state.covered |= (1 << t[0]) | (1 << t[1]) | (1 << t[2])


def _weight4_core(work: StandardMultigraph) -> _State:
    # residue 1 deletes a vertex: the bound survives the deletion here
    state = _State(_mask_residue1(work))
    cap = _iter_cap(work)
    target = work.order // 3
    _greedy(state, 3)
    state.measures.append(state.counts()[:2])
    _grow_loop(state, 3, target, cap)
    state.measures.append(state.counts()[:2])
    _upgrade_to4(state, cap)
    state.measures.append(state.counts()[:2])
    return state


def solve_weight4_tiling(m: StandardMultigraph) -> SolveOutcome:
    """floor(n/3) disjoint triples of weight >= 4.

    Guaranteed when 3*delta >= 4n - 3.
    """
    guaranteed = 3 * m.min_degree() >= 4 * m.order - 3

    def core(work: StandardMultigraph) -> _State:
        state = _weight4_core(work)
        _drop_below(state, 4)
        return state

    return _engine_outcome(
        m, core, lambda k: (4,) * k, lambda k: (4,) * k, "weight4-tiling", guaranteed
    )


def solve_weight5_tiling(m: StandardMultigraph) -> SolveOutcome:
    """floor(n/3) disjoint triples of weight >= 5.

    Guaranteed when 2*delta >= 3n - 3.
    """
    guaranteed = 2 * m.min_degree() >= 3 * m.order - 3

    def core(work: StandardMultigraph) -> _State:
        # stage 1 may mask a vertex for its own residue-1 reduction; the
        # upgrade stage runs on the full graph so that a leftover vertex
        # stays available as the seventh exchange vertex.  Deleting it
        # outright would cost 2 degrees, which this threshold cannot spare.
        st4 = _weight4_core(work)
        state = _State(work)
        state.tiles = list(st4.tiles)
        for t in state.tiles:
            state.covered |= (1 << t[0]) | (1 << t[1]) | (1 << t[2])
        state.trace = st4.trace
        state.moves = st4.moves
        state.iters = st4.iters
        state.measures = st4.measures
        cap = _iter_cap(work)
        _upgrade_to4(state, cap)
        state.measures.append(state.counts())
        _upgrade_to5(state, cap)
        state.measures.append(state.counts())
        _drop_below(state, 5)
        return state

    return _engine_outcome(
        m, core, lambda k: (5,) * k, lambda k: (5,) * k, "weight5-tiling", guaranteed
    )


def _mixed_required(k: int) -> tuple[int, ...]:
    if k <= 0:
        return ()
    return (5,) * (k - 1) + (4,)


def _mixed_core(work: StandardMultigraph, allow_augment: bool) -> _State:
    # residue 1 deletes a vertex; the threshold survives by integrality
    work = _mask_residue1(work)
    state = _State(work)
    cap = _iter_cap(work)
    k = work.order // 3
    _greedy(state, 5)
    state.measures.append((len(state.tiles), 0, 0))
    # stage 1: grow the weight-5 tiling toward k-1 (or k) tiles
    _grow_loop(state, 5, k, cap)
    state.measures.append((len(state.tiles), 0, 0))
    # stage 2: endgame on the leftover triple
    while len(state.tiles) == k - 1 and state.iters < cap:
        w_verts = sorted(_bits(state.uncovered()))
        if len(w_verts) != 3:
            break
        wt = triple_weight(state.m, *w_verts)
        if wt is not None and wt >= 4:
            state.apply("leftover-direct", (), [tuple(w_verts)])
            state.measures.append((len(state.tiles),) + _leftover_measure(state.m, ()))
            break
        if _finish_pair(state) or _finish_triple(state):
            state.measures.append((len(state.tiles), 0, 0))
            break
        if _find_add(state, 5) or _swap_one(state, 5) or _swap_two(state, 5):
            state.measures.append((len(state.tiles), 0, 0))
            continue
        if _leftover_boost(state):
            state.measures.append(
                (len(state.tiles),) + _leftover_measure(state.m, sorted(_bits(state.uncovered())))
            )
            continue
        break
    if len(state.tiles) < k and allow_augment and work.order <= oracle.DEFAULT_CAP:
        _augment_mixed(state, k)
    return state


def _augment_mixed(state: _State, k: int) -> None:
    """Stall recovery: raise one pair's multiplicity, re-solve, map back.

    Mirrors the maximal-counterexample step: a tiling of the augmented
    graph either avoids the phantom pair or pinpoints the one tile to
    repair in the true graph.
    """
    m = state.m
    pairs = []
    for v in m.vertices():
        for u in m.vertices():
            if u >= v:
                break
            if m.mu(u, v) < 2:
                pairs.append((u, v))
    for u, v in pairs:
        bumped = m.with_pair(u, v, m.mu(u, v) + 1)
        sub = _mixed_core(bumped, allow_augment=False)
        if len(sub.tiles) != k:
            continue
        report = validate_tiling(m, [Tile(t) for t in sub.tiles], _mixed_required(k))
        if report.valid:
            state.tiles = sub.tiles
            state.covered = sub.covered
            state.apply("augment-pair", (), [])
            return
        # repair: re-open the tile using the phantom pair, retry the endgame
        affected = [i for i, t in enumerate(sub.tiles) if u in t and v in t]
        if len(affected) != 1:
            continue
        retry = _State(m)
        retry.tiles = [t for i, t in enumerate(sub.tiles) if i != affected[0]]
        retry.covered = 0
        for t in retry.tiles:
            retry.covered |= (1 << t[0]) | (1 << t[1]) | (1 << t[2])
        w_verts = sorted(_bits(retry.uncovered()))
        wt = triple_weight(m, *w_verts) if len(w_verts) == 3 else None
        if wt is not None and wt >= 4:
            retry.apply("augment-direct", (), [tuple(w_verts)])
        elif not (_finish_pair(retry) or _finish_triple(retry)):
            continue
        if len(retry.tiles) == k:
            report = validate_tiling(m, [Tile(t) for t in retry.tiles], _mixed_required(k))
            if report.valid:
                state.tiles = retry.tiles
                state.covered = retry.covered
                state.apply("augment-repair", (), [])
                return


def solve_mixed_tiling(m: StandardMultigraph) -> SolveOutcome:
    """floor(n/3) disjoint triples: one of weight >= 4, the rest >= 5.

    Guaranteed when 3*delta >= 4n - 3.  All residues of n mod 3 are
    handled; the returned tiles use the caller's vertex indices.
    """
    guaranteed = 3 * m.min_degree() >= 4 * m.order - 3

    def core(work: StandardMultigraph) -> _State:
        return _mixed_core(work, allow_augment=True)

    return _engine_outcome(
        m, core, _mixed_required, _mixed_required, "mixed-tiling", guaranteed
    )


# -- directed solvers ----------------------------------------------------------


def _max_cyclic_witness(d: Digraph) -> list[tuple[int, int, int]]:
    """A maximum disjoint family of cyclic triples (exact, n <= 15)."""
    best: list[tuple[int, int, int]] = []
    cur: list[tuple[int, int, int]] = []

    def dfs(pool: int) -> None:
        nonlocal best
        if len(cur) > len(best):
            best = cur.copy()
        if len(cur) + bin(pool).count("1") // 3 <= len(best) or not pool:
            return
        v = (pool & -pool).bit_length() - 1
        rest = pool & ~(1 << v)
        for u in _bits(rest):
            for w in _bits(rest & ~((1 << (u + 1)) - 1)):
                if oracle._cyclic_ok(d, v, u, w):
                    cur.append((v, u, w))
                    dfs(rest & ~(1 << u) & ~(1 << w))
                    cur.pop()
        dfs(rest)

    dfs((1 << d.n) - 1)
    return best


def solve_cyclic_tiling(d: Digraph) -> list[DirectedTriple]:
    """floor(n/3) disjoint cyclic triangles, via weight-5 triples underneath.

    Guaranteed when 2*delta_t >= 3n - 3; below the threshold the result is
    the best tiling found (exact for n <= 15).
    """
    k = d.n // 3
    m = underlying_multigraph(d)
    out = solve_weight5_tiling(m)
    if out.found:
        return [realize_directed(d, t.verts, "cyclic") for t in out.tiling]
    if d.n <= oracle.DEFAULT_CAP:
        exact = oracle.exact_directed_tiling(d, cyclic=k, transitive=0)
        if exact is not None:
            return exact
        witness = _max_cyclic_witness(d)
        return [_ordered(d, t, "cyclic") for t in witness]
    # best effort above the exact cap: realize what the multigraph search
    # produced, then extend greedily with any further disjoint cyclic triples
    triples = [
        realize_directed(d, t.verts, "cyclic")
        for t in out.best
        if (triple_weight(m, *t.verts) or 0) >= 5
    ]
    used = 0
    for t in triples:
        for v in t.verts:
            used |= 1 << v
    pool = ((1 << d.n) - 1) & ~used
    for v in _bits(pool):
        rest = pool & ~((1 << (v + 1)) - 1)
        done = False
        for u in _bits(rest):
            for w in _bits(rest & ~((1 << (u + 1)) - 1)):
                if oracle._cyclic_ok(d, v, u, w):
                    triples.append(_ordered(d, (v, u, w), "cyclic"))
                    pool &= ~((1 << v) | (1 << u) | (1 << w))
                    done = True
                    break
            if done:
                break
    return triples


def _ordered(d: Digraph, triple, kind: str) -> DirectedTriple:
    out = order_as(d, triple, kind)
    if out is None:
        raise NotRealizableError(f"triple {triple} lost its {kind} ordering")
    return out


def solve_directed_mixed(d: Digraph, cyclic: int, transitive: int) -> list[DirectedTriple]:
    """Tiling by ``cyclic`` cyclic and ``transitive`` transitive triangles.

    Requires transitive >= 1 and cyclic + transitive = floor(n/3).
    Guaranteed when 3*delta_t >= 4n - 3 (reported, not enforced); below
    the threshold the search is best effort.
    """
    k = d.n // 3
    if transitive < 1 or cyclic < 0 or cyclic + transitive != k:
        raise BadSplitError(
            f"split ({cyclic},{transitive}) invalid: need transitive >= 1 "
            f"and sum {k}"
        )
    if 3 * d.min_total_degree() < 4 * d.n - 3:
        log.warning(
            "directed-mixed: total degree %d below threshold; best effort",
            d.min_total_degree(),
        )
    m = underlying_multigraph(d)
    out = solve_mixed_tiling(m)
    if out.found:
        tiles = sorted(
            out.tiling.tiles, key=lambda t: (-(triple_weight(m, *t.verts) or 0), t.verts)
        )
        result = []
        for i, t in enumerate(tiles):
            kind = "cyclic" if i < cyclic else "transitive"
            result.append(realize_directed(d, t.verts, kind))
        return result
    if d.n <= oracle.DEFAULT_CAP:
        exact = oracle.exact_directed_tiling(d, cyclic=cyclic, transitive=transitive)
        if exact is not None:
            return exact
        return []
    # best effort: realize as many requested kinds as the best tiling allows
    result = []
    c_left, t_left = cyclic, transitive
    for t in sorted(out.best, key=lambda t: (-(triple_weight(m, *t.verts) or 0), t.verts)):
        w = triple_weight(m, *t.verts) or 0
        if c_left and w >= 5:
            result.append(realize_directed(d, t.verts, "cyclic"))
            c_left -= 1
        elif t_left and w >= 4:
            result.append(realize_directed(d, t.verts, "transitive"))
            t_left -= 1
    return result
