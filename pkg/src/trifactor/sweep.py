"""Exhaustive threshold sweeps and randomized conjecture probes.

A sweep enumerates a labelled graph space under a degree filter, runs one
solver on every instance, and reports scanned/success/failure counts with
every failing instance dumped verbatim.  Work is fanned out over a process
pool as contiguous sub-shards and merged in shard order, so reports are
identical for any worker count; TRIFACTOR_THREADS caps the pool (default:
one worker per core).

The conjecture probe samples digraphs conditioned on a semidegree floor
and reports the cyclic-factor hit rate; misses are research output, not
failures.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracle
from .graphs import SimpleGraph, build_digraph
from .solvers import (
    solve_cyclic_tiling,
    solve_mixed_tiling,
    solve_triangle_factor,
    solve_weight4_tiling,
    solve_weight5_tiling,
)
from .textio import format_graph

__all__ = ["SweepReport", "run_sweep", "ProbeReport", "run_conjecture_probe", "worker_count"]

SPEC_KINDS = {
    "c3": "simple",
    "t4": "multigraph",
    "t5": "multigraph",
    "main": "multigraph",
    "cyclic": "digraph",
}


@dataclass
class SweepReport:
    kind: str
    n: int
    spec: str
    delta_min: Optional[int]
    shard: Optional[tuple[int, int]]
    scanned: int = 0
    successes: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def lines(self) -> list[str]:
        filt = "all" if self.delta_min is None else f"delta>={self.delta_min}"
        shard = "-" if self.shard is None else f"{self.shard[0]}/{self.shard[1]}"
        out = [
            f"sweep kind={self.kind} n={self.n} spec={self.spec} "
            f"filter={filt} shard={shard}",
            f"scanned={self.scanned} successes={self.successes} "
            f"failures={len(self.failures)} elapsed={self.elapsed:.2f}s",
        ]
        for text in self.failures:
            out.append("failure:")
            out.extend("  " + ln for ln in text.rstrip("\n").splitlines())
        return out


def _solve_ok(spec: str, g) -> bool:
    if spec == "c3":
        if g.order % 3:
            return False
        return solve_triangle_factor(g).found
    if spec == "t4":
        return solve_weight4_tiling(g).found
    if spec == "t5":
        return solve_weight5_tiling(g).found
    if spec == "main":
        return solve_mixed_tiling(g).found
    if spec == "cyclic":
        return len(solve_cyclic_tiling(g)) == g.n // 3
    raise ValueError(f"unknown spec {spec!r}")


def _fail_text(g) -> str:
    if isinstance(g, SimpleGraph):
        g = g.to_multigraph()
    return format_graph(g)


def _run_shard(
    kind: str, n: int, spec: str, delta_min: Optional[int], idx: int, count: int
) -> tuple[int, int, list[str]]:
    scanned = successes = 0
    failures: list[str] = []
    for g in oracle.enumerate_space(
        n, kind, delta_min=delta_min, shard_index=idx, shard_count=count
    ):
        scanned += 1
        if _solve_ok(spec, g):
            successes += 1
        else:
            failures.append(_fail_text(g))
    return scanned, successes, failures


def worker_count() -> int:
    env = os.environ.get("TRIFACTOR_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_sweep(
    spec: str,
    n: int,
    delta_min: Optional[int] = None,
    kind: Optional[str] = None,
    shard_index: Optional[int] = None,
    shard_count: Optional[int] = None,
    workers: Optional[int] = None,
) -> SweepReport:
    """Solve every graph in the (filtered, optionally sharded) space."""
    if kind is None:
        kind = SPEC_KINDS[spec]
    report = SweepReport(
        kind,
        n,
        spec,
        delta_min,
        None if shard_index is None else (shard_index, shard_count or 1),
    )
    outer_i, outer_s = (0, 1) if shard_index is None else (shard_index, shard_count or 1)
    if workers is None:
        workers = worker_count()
    tasks = max(1, workers * 4) if workers > 1 else 1
    start = time.monotonic()
    sub = [(outer_i * tasks + t, outer_s * tasks) for t in range(tasks)]
    if workers == 1:
        parts = [_run_shard(kind, n, spec, delta_min, i, c) for i, c in sub]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_shard, kind, n, spec, delta_min, i, c)
                for i, c in sub
            ]
            parts = [f.result() for f in futures]
    for scanned, successes, failures in parts:
        report.scanned += scanned
        report.successes += successes
        report.failures.extend(failures)
    report.elapsed = time.monotonic() - start
    return report


# -- conjecture probe -----------------------------------------------------------


@dataclass
class ProbeReport:
    n: int
    semi_min: int
    samples: int
    hits: int
    misses: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def hit_rate(self) -> float:
        return self.hits / self.samples if self.samples else 0.0

    def lines(self) -> list[str]:
        out = [
            f"probe n={self.n} semidegree>={self.semi_min} samples={self.samples} "
            f"hits={self.hits} rate={self.hit_rate:.6f} elapsed={self.elapsed:.2f}s"
        ]
        for text in self.misses:
            out.append("candidate-counterexample:")
            out.extend("  " + ln for ln in text.rstrip("\n").splitlines())
        return out


def _sample_digraphs_min_semi(
    n: int, semi_min: int, samples: int, seed: int, p: float = 0.85
):
    """Batch rejection sampler: i.i.d. arc indicators conditioned on the
    semidegree floor.  Driven by numpy PCG64 with the given seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    out_inc = np.zeros((len(pairs), n), dtype=np.int64)
    in_inc = np.zeros((len(pairs), n), dtype=np.int64)
    for j, (u, v) in enumerate(pairs):
        out_inc[j, u] = 1
        in_inc[j, v] = 1
    produced = 0
    while produced < samples:
        chunk = min(20000, max(4096, samples))
        draws = rng.random((chunk, len(pairs))) < p
        outs = draws @ out_inc
        ins = draws @ in_inc
        keep = (np.minimum(outs, ins).min(axis=1)) >= semi_min
        for row in draws[keep]:
            if produced >= samples:
                break
            arcs = [pairs[j] for j in range(len(pairs)) if row[j]]
            produced += 1
            yield build_digraph(n, arcs)


def run_conjecture_probe(
    n: int, samples: int, seed: int, semi_min: Optional[int] = None
) -> ProbeReport:
    """Hit rate of cyclic-triangle factors over semidegree-floored digraphs.

    Any miss is certified by the exact search before being reported, and
    reported misses do not make the probe fail: they are candidate
    counterexamples to be inspected.
    """
    if n % 3:
        raise ValueError("probe needs 3 | n")
    if semi_min is None:
        semi_min = (2 * n) // 3
    k = n // 3
    report = ProbeReport(n, semi_min, samples, 0)
    start = time.monotonic()
    for d in _sample_digraphs_min_semi(n, semi_min, samples, seed):
        found = oracle.exact_directed_tiling(d, cyclic=k, transitive=0, factor=True)
        if found is not None:
            report.hits += 1
        else:
            report.misses.append(format_graph(d))
    report.elapsed = time.monotonic() - start
    return report
