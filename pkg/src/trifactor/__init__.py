"""Triangle tilings of standard multigraphs and directed graphs.

Constructive solvers for triangle factors and weight-threshold tilings,
exact exhaustive oracles, generators for the tight witness instances, and
an absorbing toolkit for assembling weight-5 factors at scale.
"""

from .errors import (
    BadParameterError,
    BadPartitionError,
    BadSplitError,
    DuplicatePairError,
    DuplicateVerticesError,
    InstanceTooLargeError,
    KindMismatchError,
    LoopEdgeError,
    MultiplicityError,
    NotDivisibleBy3Error,
    NotRealizableError,
    OverlapError,
    ParseError,
    PreconditionError,
    TrifactorError,
    VertexRangeError,
    WrongLengthError,
)
from .extremal import (
    ExtremalInstance,
    cyclic_tiling_extremal,
    heavy_split_extremal,
    triangle_factor_extremal,
    triangle_factor_extremal_variants,
)
from .graphs import (
    Digraph,
    HeavyView,
    SimpleGraph,
    StandardMultigraph,
    add_dominating_vertex,
    build_digraph,
    build_multigraph,
    build_simple_graph,
    degree_stats,
    pair_weight,
    underlying_multigraph,
)
from .randgen import (
    random_digraph,
    random_digraph_min_semidegree,
    random_multigraph,
    random_multigraph_min_degree,
    random_simple_graph,
)
from .oracle import (
    ShardDescriptor,
    count_chains_bruteforce,
    enumerate_space,
    exact_directed_tiling,
    exact_tiling,
    exact_weight_tiling,
    max_cyclic_tiling,
    max_weight_tiling,
    space_size,
)
from .solvers import (
    ExchangeMove,
    SolveOutcome,
    solve_cyclic_tiling,
    solve_directed_mixed,
    solve_mixed_tiling,
    solve_triangle_factor,
    solve_weight4_tiling,
    solve_weight5_tiling,
)
from .stability import (
    AbsorbOutcome,
    ChainTuple,
    LSetResult,
    SpongeRecord,
    SplitResult,
    SplitTileResult,
    StabilityParams,
    absorb_solve,
    alpha_splittable,
    chain_join_counts,
    count_connecting_tuples,
    eq_bound_violations,
    f_set,
    find_chain_joining,
    is_chain,
    is_sponge,
    joins,
    l_set,
    parse_params_config,
    q_set,
    sample_sponge_family,
    split_and_tile,
)
from .textio import format_graph, parse_graph
from .tiling import (
    DirectedTriple,
    Tile,
    Tiling,
    ValidityReport,
    classify_triangle,
    fold_in_vertex,
    order_as,
    realize_directed,
    split_heavy_path,
    split_two_heavy_edges,
    split_two_vertices,
    validate_tiling,
)

__version__ = "0.1.0"
