"""Exact vertex separator toolkit: max-flow connectivity, MILP models, branch-and-cut."""

from .connectivity import AlphaTable, alpha_min, alpha_pair, alpha_table, min_vertex_cut
from .errors import (
    AdjacentPairError,
    CompleteGraphError,
    DisconnectedGraphError,
    GraphError,
    GuardError,
    NumericalError,
    ParseError,
    VspError,
)
from .graph import (
    Graph,
    InstanceMeta,
    VertexPartition,
    default_beta,
    intersection_graph,
    meta,
    parse_dimacs_col,
    parse_matrix_market,
    read_graph,
    validate_partition,
)
from .model import VspModel, build_ab_model, build_full_model
from .solver import SolveResult, SolverConfig, brute_force, solve

__all__ = [
    "AdjacentPairError",
    "AlphaTable",
    "CompleteGraphError",
    "DisconnectedGraphError",
    "Graph",
    "GraphError",
    "GuardError",
    "InstanceMeta",
    "NumericalError",
    "ParseError",
    "SolveResult",
    "SolverConfig",
    "VertexPartition",
    "VspError",
    "VspModel",
    "alpha_min",
    "alpha_pair",
    "alpha_table",
    "brute_force",
    "build_ab_model",
    "build_full_model",
    "default_beta",
    "intersection_graph",
    "meta",
    "min_vertex_cut",
    "parse_dimacs_col",
    "parse_matrix_market",
    "read_graph",
    "solve",
    "validate_partition",
]
