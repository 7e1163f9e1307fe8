"""
Vertex orders for graphs that are not 1D point graphs.

A good order puts the members of each true cluster next to each other, so the
consecutive-cluster DP can find them. Orders are built greedily from a start
vertex by walking to the best unassigned neighbour of the previous vertex.
"""

import logging

import numpy as np
from numpy.typing import NDArray

from cluster_editing.config import InputValidationError
from cluster_editing.exact_dp import DPFrontier, DPResult
from cluster_editing.graph import Graph
from cluster_editing.weights import NEG_INF

logger = logging.getLogger(__name__)


class OrderState:
    """Growing permutation plus a cursor for handing out unassigned vertices."""

    def __init__(self, n: int):
        self.order: list[int] = []
        self.assigned = np.zeros(n, dtype=bool)
        self.next_scan = 0

    def __len__(self) -> int:
        return len(self.order)

    def assign(self, vertex: int) -> None:
        if self.assigned[vertex]:
            raise InputValidationError(f"Vertex {vertex} is already in the order")
        self.assigned[vertex] = True
        self.order.append(vertex)

    def any_vertex(self) -> int:
        """Lowest-index unassigned vertex; the cursor never moves backwards."""
        while self.assigned[self.next_scan]:
            self.next_scan += 1
        return self.next_scan

    def unassigned_neighbours(self, graph: Graph, vertex: int) -> NDArray[np.int64]:
        neighbours = np.asarray(graph.neighbours(vertex), dtype=np.int64)
        return neighbours[~self.assigned[neighbours]]


def best_candidate(
    graph: Graph, candidates: NDArray[np.int64], recent: NDArray[np.int64]
) -> int:
    """
    Candidate with the largest summed weight to the recent vertices.

    A -inf summand makes the whole score -inf; such candidates only win when
    every candidate scores -inf. Ties go to the smallest vertex id.
    """
    scores = np.zeros(candidates.size, dtype=np.float64)
    for u in recent:
        scores += graph.weights_to(int(u), candidates)

    finite = scores > NEG_INF
    if finite.any():
        candidates = candidates[finite]
        scores = scores[finite]
    top = candidates[scores == scores.max()]
    return int(top.min())


def _check_start(graph: Graph, start: int) -> None:
    if not 0 <= start < graph.n:
        raise InputValidationError(f"Start vertex {start} outside 0..{graph.n - 1}")


def lookahead_order(graph: Graph, h: int = 1, start: int = 0) -> list[int]:
    """
    Greedy order scoring candidates against the last h placed vertices.

    Args:
        graph: weighted graph
        h: number of previously placed vertices a candidate is scored against
        start: first vertex of the order

    Returns:
        Permutation of the vertices
    """
    if h < 1:
        raise InputValidationError(f"Lookahead must be at least 1, got {h}")
    if graph.n == 0:
        return []
    _check_start(graph, start)

    state = OrderState(graph.n)
    state.assign(start)
    fallbacks = 0
    while len(state) < graph.n:
        candidates = state.unassigned_neighbours(graph, state.order[-1])
        if candidates.size:
            recent = np.asarray(state.order[-h:][::-1], dtype=np.int64)
            state.assign(best_candidate(graph, candidates, recent))
        else:
            fallbacks += 1
            state.assign(state.any_vertex())

    logger.debug(f"Order of {graph.n} vertices (h={h}) restarted {fallbacks} times")
    return state.order


def nearest_neighbor_order(graph: Graph, start: int = 0) -> list[int]:
    return lookahead_order(graph, h=1, start=start)


def adaptive_cluster_edit(graph: Graph, start: int = 0) -> DPResult:
    """
    Build the order and run the frontier DP in lockstep.

    The candidate for rank j is scored against the size(j-1)+1 vertices of the
    cluster currently open at rank j-1, so the lookahead follows the cluster
    being grown. The DP uses the size(j-1)+1 frontier bound.

    Args:
        graph: weighted graph with neighbour lists
        start: first vertex of the order

    Returns:
        DPResult with clustering, opcount and the order that was built
    """
    n = graph.n
    frontier = DPFrontier(graph, full_cost=False)
    if n == 0:
        return DPResult(
            clustering=frontier.clustering(),
            opcount=0,
            order=frontier.order,
            size=frontier.size,
        )
    _check_start(graph, start)

    state = OrderState(n)
    state.assign(start)
    frontier.push(start, 0)
    while len(state) < n:
        open_size = int(frontier.size[frontier.length - 1]) + 1
        candidates = state.unassigned_neighbours(graph, state.order[-1])
        if candidates.size:
            choice = best_candidate(graph, candidates, frontier.recent(open_size))
        else:
            choice = state.any_vertex()
        state.assign(choice)
        frontier.push(choice, open_size)

    clustering = frontier.clustering()
    logger.info(
        f"Adaptive clustering of {n} vertices: {len(clustering)} clusters, "
        f"{frontier.opcount} opt' values, peak storage {frontier.peak_storage}"
    )
    return DPResult(
        clustering=clustering,
        opcount=frontier.opcount,
        order=frontier.order,
        size=frontier.size,
        dp_value=float(frontier.opt[-1]),
        peak_storage=frontier.peak_storage,
    )
