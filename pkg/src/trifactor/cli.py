"""Command-line surface.

Subcommands: tile (run a tiling solver), cyclic (cyclic triangle
tiling), mixed (cyclic+transitive split), gen (tight instances), sweep
(exhaustive solver sweep over a graph space), conjecture (randomized
semidegree probe), stability (absorbing pipeline), oracle (exact search).

Exit status: nonzero only for a sweep that found failures (1) or a usage
or input error (2); everything else exits 0, including solvers reporting
Absent on instances below their thresholds.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from typing import Optional

from . import oracle as oracle_mod
from .errors import TrifactorError
from .extremal import (
    cyclic_tiling_extremal,
    heavy_split_extremal,
    triangle_factor_extremal,
)
from .graphs import Digraph, StandardMultigraph, underlying_multigraph
from .solvers import (
    solve_cyclic_tiling,
    solve_directed_mixed,
    solve_mixed_tiling,
    solve_triangle_factor,
    solve_weight4_tiling,
    solve_weight5_tiling,
)
from .stability import StabilityParams, absorb_solve, parse_params_config
from .sweep import run_conjecture_probe, run_sweep
from .textio import format_graph, parse_graph
from .tiling import triple_weight

__all__ = ["run_command", "main"]


def _read_graph(path: Optional[str]):
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_graph(fh.read())
    return parse_graph(sys.stdin.read())


def _as_multigraph(g) -> StandardMultigraph:
    return underlying_multigraph(g) if isinstance(g, Digraph) else g


def _trace_summary(trace) -> str:
    if not trace:
        return "none"
    counted = Counter(trace)
    return " ".join(f"{rule}x{cnt}" for rule, cnt in counted.items())


def _cmd_tile(args) -> tuple[int, str]:
    g = _as_multigraph(_read_graph(args.infile))
    solver = {
        "c3": solve_triangle_factor,
        "t4": solve_weight4_tiling,
        "t5": solve_weight5_tiling,
        "main": solve_mixed_tiling,
    }[args.spec]
    out = solver(g)
    lines = [f"status={out.status} target={out.target}"]
    shown = out.tiling if out.tiling is not None else out.best
    for t in shown:
        w = triple_weight(g, *t.verts)
        lines.append(
            f"tile {t.verts[0]} {t.verts[1]} {t.verts[2]} "
            f"weight={w} required={t.required_weight}"
        )
    lines.append(f"rules: {_trace_summary(out.trace)}")
    lines.append(
        f"iterations={out.stats.get('iterations', 0)} "
        f"fallback={out.stats.get('fallback_used', False)}"
    )
    return 0, "\n".join(lines)


def _cmd_cyclic(args) -> tuple[int, str]:
    g = _read_graph(args.infile)
    if not isinstance(g, Digraph):
        raise TrifactorError("cyclic needs a digraph (header 'd <n>')")
    triples = solve_cyclic_tiling(g)
    lines = [f"found={len(triples)} target={g.n // 3}"]
    lines.extend(f"cyclic {t.verts[0]} {t.verts[1]} {t.verts[2]}" for t in triples)
    return 0, "\n".join(lines)


def _cmd_mixed(args) -> tuple[int, str]:
    g = _read_graph(args.infile)
    if not isinstance(g, Digraph):
        raise TrifactorError("mixed needs a digraph (header 'd <n>')")
    triples = solve_directed_mixed(g, args.cyclic, args.transitive)
    lines = [f"found={len(triples)} target={g.n // 3}"]
    lines.extend(
        f"{t.kind} {t.verts[0]} {t.verts[1]} {t.verts[2]}" for t in triples
    )
    return 0, "\n".join(lines)


def _cmd_gen(args) -> tuple[int, str]:
    if args.kind == "cyclic-tight":
        inst = cyclic_tiling_extremal(args.k)
    elif args.kind == "split-tight":
        inst = heavy_split_extremal(args.k)
    else:
        inst = triangle_factor_extremal(args.k, variant=args.variant)
    return 0, format_graph(inst.graph).rstrip("\n")


def _cmd_sweep(args) -> tuple[int, str]:
    report = run_sweep(
        args.spec,
        args.n,
        delta_min=args.delta_min,
        kind=args.kind,
        shard_index=args.shard_index,
        shard_count=args.shards,
        workers=args.workers,
    )
    text = "\n".join(report.lines())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return (1 if report.failures else 0), text


def _cmd_conjecture(args) -> tuple[int, str]:
    report = run_conjecture_probe(
        args.n, args.samples, args.seed, semi_min=args.semi_min
    )
    text = "\n".join(report.lines())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0, text


def _cmd_stability(args) -> tuple[int, str]:
    g = _as_multigraph(_read_graph(args.infile))
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            params, _extra = parse_params_config(fh.read())
    else:
        if args.epsilon is None or args.alpha is None:
            raise TrifactorError("stability needs --config or --epsilon/--alpha")
        params = StabilityParams(
            epsilon=args.epsilon,
            alpha=args.alpha,
            seed=args.seed,
            sigma=args.sigma or 0.0,
        )
    out = absorb_solve(g, params)
    lines = list(out.audit)
    lines.append(f"status={out.status}" + (f" stage={out.stage}" if out.stage else ""))
    if out.tiling is not None:
        lines.append(f"tiles={len(out.tiling)}")
    return 0, "\n".join(lines)


def _cmd_oracle(args) -> tuple[int, str]:
    g = _read_graph(args.infile)
    if isinstance(g, Digraph):
        if args.spec == "cyclic":
            c, t = g.n // 3, 0
        else:
            c, t = args.cyclic, args.transitive
        result = oracle_mod.exact_directed_tiling(
            g, cyclic=c, transitive=t, factor=args.factor, cap=args.cap
        )
        if result is None:
            return 0, "absent (search exhausted)"
        lines = [f"found={len(result)}"]
        lines.extend(
            f"{t.kind} {t.verts[0]} {t.verts[1]} {t.verts[2]}" for t in result
        )
        return 0, "\n".join(lines)
    k = g.order // 3
    weights = {
        "c3": (3,) * k,
        "t4": (4,) * k,
        "t5": (5,) * k,
        "main": (5,) * (k - 1) + (4,) if k else (),
    }[args.spec]
    tiling = oracle_mod.exact_weight_tiling(g, weights, factor=args.factor, cap=args.cap)
    if tiling is None:
        return 0, "absent (search exhausted)"
    lines = [f"found={len(tiling)}"]
    for t in tiling:
        w = triple_weight(g, *t.verts)
        lines.append(f"tile {t.verts[0]} {t.verts[1]} {t.verts[2]} weight={w}")
    return 0, "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trifactor",
        description="Triangle tilings of standard multigraphs and digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tile", help="run a tiling solver on a graph")
    p.add_argument("--spec", choices=["c3", "t4", "t5", "main"], required=True)
    p.add_argument("--in", dest="infile", help="graph file (default: stdin)")
    p.set_defaults(func=_cmd_tile)

    p = sub.add_parser("cyclic", help="cyclic triangle tiling of a digraph")
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=_cmd_cyclic)

    p = sub.add_parser("mixed", help="cyclic+transitive triangle factor")
    p.add_argument("--cyclic", type=int, required=True)
    p.add_argument("--transitive", type=int, required=True)
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=_cmd_mixed)

    p = sub.add_parser("gen", help="emit a tight witness instance")
    p.add_argument(
        "--kind",
        choices=["cyclic-tight", "factor-tight", "split-tight"],
        required=True,
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant", choices=["matching", "literal"], default="matching")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("sweep", help="exhaustive solver sweep over a graph space")
    p.add_argument("--spec", choices=["c3", "t4", "t5", "main", "cyclic"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=["simple", "multigraph", "digraph"])
    p.add_argument("--delta-min", type=int, dest="delta_min")
    p.add_argument("--shards", type=int)
    p.add_argument("--shard-index", type=int, dest="shard_index")
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("conjecture", help="semidegree cyclic-factor probe")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--semi-min", type=int, dest="semi_min")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("stability", help="absorbing pipeline on a multigraph")
    p.add_argument("--in", dest="infile")
    p.add_argument("--config", help="key=value parameter file")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("oracle", help="exact search (ground truth)")
    p.add_argument("--spec", choices=["c3", "t4", "t5", "main", "cyclic"], required=True)
    p.add_argument("--factor", action="store_true")
    p.add_argument("--cyclic", type=int, default=0)
    p.add_argument("--transitive", type=int, default=0)
    p.add_argument("--cap", type=int, default=oracle_mod.DEFAULT_CAP)
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=_cmd_oracle)

    return parser


def run_command(argv: list[str]) -> tuple[int, str]:
    """Run one CLI invocation; returns (exit status, report text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code) if exc.code else 0), ""
    try:
        return args.func(args)
    except TrifactorError as exc:
        return 2, f"error: {exc}"
    except FileNotFoundError as exc:
        return 2, f"error: {exc}"


def main() -> None:
    code, text = run_command(sys.argv[1:])
    if text:
        print(text)
    sys.exit(code)
