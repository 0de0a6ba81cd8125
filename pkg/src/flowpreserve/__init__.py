"""Sparse fault-tolerant bounded-flow preservers for directed graphs.

Build subgraphs that preserve, from a fixed source, every flow value up to
a threshold under any bounded set of edge failures; verify them against an
exhaustive fault-enumeration oracle; generate extremal and reduction
instances; and serve clamped-reachability queries under failures.
"""

from ._kernels import NUMBA_ENABLED
from .flow import Cut, FlowAssignment, decompose_paths, farthest_min_cut, \
    max_flow, nearest_min_cut
from .generators import (HardnessInstance, LowerBoundInstance,
                         SetCoverInstance, cover_to_preserver,
                         hardness_instance, lower_bound_instance,
                         parse_set_cover, preserver_to_cover,
                         random_capgraph, random_digraph, splitmix64)
from .graph import (CapGraph, DiGraph, GraphParseError, graph_fingerprint,
                    match_edge_ids, parse_any_edge_list, parse_cap_edge_list,
                    parse_edge_list, serialize_cap_edge_list,
                    serialize_edge_list)
from .oracle import (AT_LEAST, EXACT, OracleLoadError, QueryResult,
                     ReachabilityOracle, build_oracle, load_oracle, query,
                     save_oracle)
from .preserver import (FtrsSelection, PreserverResult, VertexAudit,
                        capacitated_ftbfp, ftbfp, ftbfp_single_dest, ftrs,
                        ftrs_single_dest)
from .transform import (TransformedGraph, bounded_outdegree_transform,
                        pull_back_in_edges, push_faults)
from .verify import (BoundsReport, BudgetExceededError, Violation,
                     audit_bounds, edge_criticality, verify_ftbfp)

__version__ = "0.1.0"

__all__ = [
    "AT_LEAST", "BoundsReport", "BudgetExceededError", "CapGraph", "Cut",
    "DiGraph", "EXACT", "FlowAssignment", "FtrsSelection",
    "GraphParseError", "HardnessInstance", "LowerBoundInstance",
    "NUMBA_ENABLED", "OracleLoadError", "PreserverResult", "QueryResult",
    "ReachabilityOracle", "SetCoverInstance", "TransformedGraph",
    "VertexAudit", "Violation", "audit_bounds", "build_oracle",
    "bounded_outdegree_transform", "capacitated_ftbfp", "cover_to_preserver",
    "decompose_paths", "edge_criticality", "farthest_min_cut", "ftbfp",
    "ftbfp_single_dest", "ftrs", "ftrs_single_dest", "graph_fingerprint",
    "hardness_instance", "load_oracle", "lower_bound_instance", "match_edge_ids",
    "max_flow", "nearest_min_cut", "parse_any_edge_list",
    "parse_cap_edge_list", "parse_edge_list", "parse_set_cover",
    "preserver_to_cover", "pull_back_in_edges", "push_faults", "query",
    "random_capgraph", "random_digraph", "save_oracle",
    "serialize_cap_edge_list", "serialize_edge_list", "splitmix64",
    "verify_ftbfp",
]
