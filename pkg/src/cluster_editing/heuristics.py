"""Frontier-bounded versions of the consecutive-cluster dynamic program."""

import logging
from collections.abc import Sequence
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from cluster_editing.exact_dp import (
    Clustering,
    DPFrontier,
    DPResult,
    check_permutation,
    clustering_cost,
)
from cluster_editing.graph import Graph

logger = logging.getLogger(__name__)


class HeuristicVariant(str, Enum):
    FRONTIER_PLUS_ONE = "frontier_plus_one"
    FRONTIER_OR_POSITIVE_EDGE = "frontier_or_positive_edge"


def positive_edge_reach(graph: Graph, frontier: DPFrontier, vertex: int) -> int:
    """Largest i such that vertex has a positive edge to the vertex placed i ranks ago."""
    j = frontier.length
    neighbours = np.asarray(graph.neighbours(vertex), dtype=np.int64)
    if not neighbours.size:
        return 0
    ranks = frontier.rank[neighbours]
    placed = ranks >= 0
    if not placed.any():
        return 0
    weights = graph.weights_to(vertex, neighbours[placed])
    positive = ranks[placed][weights > 0]
    if not positive.size:
        return 0
    return int(j - positive.min())


def frontier_bound(
    graph: Graph, frontier: DPFrontier, vertex: int, variant: HeuristicVariant
) -> int:
    j = frontier.length
    if j == 0:
        return 0
    bound = int(frontier.size[j - 1]) + 1
    if variant == HeuristicVariant.FRONTIER_OR_POSITIVE_EDGE:
        bound = max(bound, positive_edge_reach(graph, frontier, vertex))
    return min(bound, j)


def heuristic_dp(
    graph: Graph,
    order: Sequence[int] | NDArray[np.int64] | None = None,
    variant: HeuristicVariant = HeuristicVariant.FRONTIER_PLUS_ONE,
) -> DPResult:
    """
    Consecutive-cluster DP that only explores last-cluster sizes near the frontier.

    Variant FRONTIER_PLUS_ONE evaluates i = 1 .. size(j-1)+1. Variant
    FRONTIER_OR_POSITIVE_EDGE also reaches back to the farthest earlier vertex
    joined to order(j) by a positive edge. Only two rows are kept alive.

    The result carries no cost; use heuristic_cost_report for that.

    Args:
        graph: weighted graph
        order: permutation of the vertices, identity when omitted
        variant: which frontier bound to apply

    Returns:
        DPResult with clustering, opcount and peak row storage
    """
    n = graph.n
    ranks = np.arange(n, dtype=np.int64) if order is None else np.asarray(order)
    check_permutation(ranks, n)

    frontier = DPFrontier(graph, full_cost=False)
    for j in range(n):
        vertex = int(ranks[j])
        frontier.push(vertex, frontier_bound(graph, frontier, vertex, variant))

    clustering = frontier.clustering()
    logger.info(
        f"Heuristic {variant.value} on {n} vertices: {len(clustering)} clusters, "
        f"{frontier.opcount} opt' values, peak storage {frontier.peak_storage}"
    )
    return DPResult(
        clustering=clustering,
        opcount=frontier.opcount,
        order=frontier.order,
        size=frontier.size,
        dp_value=float(frontier.opt[-1]) if n else 0.0,
        peak_storage=frontier.peak_storage,
    )


def heuristic_cost_report(graph: Graph, clustering: Clustering) -> float:
    """
    Cost of a heuristic solution.

    Kept out of heuristic_dp: evaluating the within-cluster term is quadratic in
    the cluster sizes, which dominates the solve itself on large clusters.
    """
    cost = clustering_cost(graph, clustering)
    logger.debug(f"Cost of {len(clustering)} clusters: {cost:.6f}")
    return cost
