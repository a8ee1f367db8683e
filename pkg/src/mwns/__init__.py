"""Exact, approximate, and preprocessing algorithms for multiway near-separators."""

from .graph import Graph, connected_components
from .blockcut import (
    BlockCutForest,
    block_cut_forest,
    subtree_vertices,
    separating_cut_vertex,
    path_through_vertex_in_block,
    threaded_path,
)
from .core import (
    Instance,
    SolveResult,
    is_mwns,
    find_t_cycle,
    has_t_cycle,
    has_two_ivd_paths,
    nearly_separated_terminals,
    find_separable_leaf_terminal,
)
from .separators import (
    SeparatorQuery,
    ImportantSeparatorSet,
    max_vertex_flow,
    min_separator,
    enumerate_important_separators,
    path_through_forced_vertex,
    max_terminals_on_path,
    gallai_q_paths,
)
# the pivot-avoiding approximation itself lives at mwns.blocker.blocker;
# re-exporting it here would shadow the submodule attribute
from .blocker import blocker_run, blocker_step
from .reducer import ReductionLog, build_1_redundant, lift_solution, reduce_terminals
from .solver import (
    SearchStats,
    compression_step,
    oracle_opt_x,
    oracle_solve,
    pushing_lemma_witness,
    solve,
)

__all__ = [
    "Graph",
    "connected_components",
    "BlockCutForest",
    "block_cut_forest",
    "subtree_vertices",
    "separating_cut_vertex",
    "path_through_vertex_in_block",
    "threaded_path",
    "Instance",
    "SolveResult",
    "is_mwns",
    "find_t_cycle",
    "has_t_cycle",
    "has_two_ivd_paths",
    "nearly_separated_terminals",
    "find_separable_leaf_terminal",
    "SeparatorQuery",
    "ImportantSeparatorSet",
    "max_vertex_flow",
    "min_separator",
    "enumerate_important_separators",
    "path_through_forced_vertex",
    "max_terminals_on_path",
    "gallai_q_paths",
    "blocker_run",
    "blocker_step",
    "ReductionLog",
    "build_1_redundant",
    "lift_solution",
    "reduce_terminals",
    "SearchStats",
    "compression_step",
    "oracle_opt_x",
    "oracle_solve",
    "pushing_lemma_witness",
    "solve",
]
