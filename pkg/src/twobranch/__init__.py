"""Spanning trees with few branch vertices in claw-free graphs.

Library surface: an immutable graph core with degree-sum machinery, a
spanning-tree type with shape classification, an exchange-based local-search
solver, exact desk-scale oracles, seeded instance generators, and a batch
verification harness.
"""

from .graph import (
    ClawWitness,
    DegreeSumBound,
    Graph,
    GraphFormatError,
    format_edge_list,
    parse_graph,
)
from .tree import (
    OrientedPath,
    Shape,
    ShapeConfig,
    SpanningTree,
    TreeError,
    classify_shape,
    spanning_tree_dfs,
)
from .engine import (
    CountingCertificate,
    ExchangeMove,
    Potential,
    SolveOutcome,
    SolveStatus,
    catalog_moves,
    counting_certificate,
    minimize,
    potential,
    reduce_leaves,
    solve,
)
from .oracle import (
    EnumerationOutcome,
    OracleCapExceeded,
    OracleResult,
    count_spanning_trees,
    enumerate_spanning_trees,
    min_branch_vertices_exact,
    min_leaves_exact,
)
from .generators import (
    GenSpec,
    ShiftRegisterRng,
    complete_graph,
    cycle_graph,
    line_graph,
    named_graph,
    net_graph,
    parse_genspec,
    path_graph,
    random_claw_free_connected,
    random_graph,
    star_graph,
)
from .verify import (
    T14,
    T15,
    CampaignConfig,
    CampaignReport,
    HypothesisReport,
    TheoremSpec,
    check_theorem,
    conjecture_spec,
    evaluate_hypotheses,
    run_campaign,
    theorem_by_id,
)

__all__ = [
    "ClawWitness",
    "DegreeSumBound",
    "Graph",
    "GraphFormatError",
    "format_edge_list",
    "parse_graph",
    "OrientedPath",
    "Shape",
    "ShapeConfig",
    "SpanningTree",
    "TreeError",
    "classify_shape",
    "spanning_tree_dfs",
    "CountingCertificate",
    "ExchangeMove",
    "Potential",
    "SolveOutcome",
    "SolveStatus",
    "catalog_moves",
    "counting_certificate",
    "minimize",
    "potential",
    "reduce_leaves",
    "solve",
    "EnumerationOutcome",
    "OracleCapExceeded",
    "OracleResult",
    "count_spanning_trees",
    "enumerate_spanning_trees",
    "min_branch_vertices_exact",
    "min_leaves_exact",
    "GenSpec",
    "ShiftRegisterRng",
    "complete_graph",
    "cycle_graph",
    "line_graph",
    "named_graph",
    "net_graph",
    "parse_genspec",
    "path_graph",
    "random_claw_free_connected",
    "random_graph",
    "star_graph",
    "T14",
    "T15",
    "CampaignConfig",
    "CampaignReport",
    "HypothesisReport",
    "TheoremSpec",
    "check_theorem",
    "conjecture_spec",
    "evaluate_hypotheses",
    "run_campaign",
    "theorem_by_id",
]
