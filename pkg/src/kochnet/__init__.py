"""Deterministic Koch network laboratory.

Generate the labeled networks K_{m,t}, do neighbor/father/routing
arithmetic on labels alone, compute exact and closed-form betweenness
centralities, and solve the unit-resistor network, with every claim
checked against independent brute-force oracles.
"""

from ._kernels import BACKEND, available_backends
from .analytics import claim_audit, closed_forms, empirical_stats, stats_report
from .centrality import (
    centrality_report,
    descendant_count,
    exact_edge_betweenness,
    exact_vertex_betweenness,
    firstorder_vertex_betweenness,
    paper_edge_betweenness,
    paper_vertex_betweenness,
    scaling_fit,
)
from .electrical import (
    current_flow_betweenness,
    path_profile,
    solve,
    voltage_gap,
)
from .errors import (
    AnalysisError,
    KochError,
    LabelDomainError,
    LabelFormatError,
    SizeCapError,
    UnknownLabelError,
)
from .graph import KochGraph, VertexRecord, build
from .labels import (
    Label,
    NeighborPartition,
    children,
    companion,
    degree_of,
    enumerate_labels,
    father,
    format_label,
    l_max,
    neighbor_partition,
    parse_label,
)
from .routing import RoutePath, ancestor_chain, bfs_distances, bfs_sigma, distance, route

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "available_backends",
    "AnalysisError",
    "KochError",
    "KochGraph",
    "Label",
    "LabelDomainError",
    "LabelFormatError",
    "NeighborPartition",
    "RoutePath",
    "SizeCapError",
    "UnknownLabelError",
    "VertexRecord",
    "ancestor_chain",
    "bfs_distances",
    "bfs_sigma",
    "build",
    "centrality_report",
    "children",
    "claim_audit",
    "closed_forms",
    "companion",
    "current_flow_betweenness",
    "degree_of",
    "descendant_count",
    "distance",
    "empirical_stats",
    "enumerate_labels",
    "exact_edge_betweenness",
    "exact_vertex_betweenness",
    "father",
    "firstorder_vertex_betweenness",
    "format_label",
    "l_max",
    "neighbor_partition",
    "paper_edge_betweenness",
    "paper_vertex_betweenness",
    "parse_label",
    "path_profile",
    "route",
    "scaling_fit",
    "solve",
    "stats_report",
    "voltage_gap",
]
