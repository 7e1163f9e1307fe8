"""Weighted cluster editing for 1D point graphs and read alignment graphs."""

from cluster_editing.exact_dp import (
    Clustering,
    clustering_cost,
    exact_dp_unweighted,
    exact_dp_weighted,
)
from cluster_editing.graph import PointGraph, Read, WeightedGraph, build_alignment_graph
from cluster_editing.heuristics import HeuristicVariant, heuristic_dp
from cluster_editing.ordering import adaptive_cluster_edit, lookahead_order

__all__ = [
    "Clustering",
    "HeuristicVariant",
    "PointGraph",
    "Read",
    "WeightedGraph",
    "adaptive_cluster_edit",
    "build_alignment_graph",
    "clustering_cost",
    "exact_dp_unweighted",
    "exact_dp_weighted",
    "heuristic_dp",
    "lookahead_order",
]
