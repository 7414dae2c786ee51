"""Bipartite Ramsey numbers of even cycles: constructions, exact searches and
a regularity-method pipeline for long monochromatic cycles."""

from __future__ import annotations

from .budget import Budget, BudgetExhausted
from .constructions import BLUE, RED, column_windows, h_tilde, h_tilde_exceptional, lower_bound_coloring
from .cycles import CycleCertificate, circumference, find_cycle_of_length, verify_cycle
from .embedding import (
    EmbeddingFailure,
    PipelineError,
    PipelineResult,
    StitchInfeasible,
    WalkPlan,
    connect_in_pair,
    find_long_mono_cycle,
    split_length,
    stitch_long_cycle,
    verify_path,
    verify_walk,
    walk_plan,
)
from .graph import (
    ColoredBipartiteGraph,
    GraphError,
    GraphView,
    Vertex,
    X,
    Y,
    build_graph,
    components,
    min_degree,
    random_coloring,
)
from .matching import (
    ConnectedMatchingCertificate,
    Matching,
    TutteDecomposition,
    TutteNotFound,
    best_connected_matchings,
    gallai_edmonds,
    is_matching,
    largest_connected_matching,
    max_matching,
    tutte_partition,
    verify_connected_matching,
    verify_tutte,
)
from .ramsey import RamseyValue, RamseyVerdict, bramsey, decide_arrowing, is_good_coloring, lower_bound
from .regularity import (
    ClusterPartition,
    ReducedColoredGraph,
    RegularityResult,
    density,
    is_eps_regular,
    reduced_graph,
    typical_vertices,
)

__all__ = [
    "BLUE",
    "Budget",
    "BudgetExhausted",
    "ClusterPartition",
    "ColoredBipartiteGraph",
    "ConnectedMatchingCertificate",
    "CycleCertificate",
    "EmbeddingFailure",
    "GraphError",
    "GraphView",
    "Matching",
    "PipelineError",
    "PipelineResult",
    "RED",
    "RamseyValue",
    "RamseyVerdict",
    "ReducedColoredGraph",
    "RegularityResult",
    "StitchInfeasible",
    "TutteDecomposition",
    "TutteNotFound",
    "Vertex",
    "WalkPlan",
    "X",
    "Y",
    "best_connected_matchings",
    "bramsey",
    "build_graph",
    "circumference",
    "column_windows",
    "components",
    "connect_in_pair",
    "decide_arrowing",
    "density",
    "find_cycle_of_length",
    "find_long_mono_cycle",
    "gallai_edmonds",
    "h_tilde",
    "h_tilde_exceptional",
    "is_eps_regular",
    "is_good_coloring",
    "is_matching",
    "largest_connected_matching",
    "lower_bound",
    "lower_bound_coloring",
    "max_matching",
    "min_degree",
    "random_coloring",
    "reduced_graph",
    "split_length",
    "stitch_long_cycle",
    "tutte_partition",
    "typical_vertices",
    "verify_connected_matching",
    "verify_cycle",
    "verify_path",
    "verify_tutte",
    "verify_walk",
    "walk_plan",
]
