"""
Cluster editing restricted to clusters that are consecutive in a vertex order.

For a 1D point graph taken in coordinate order some optimal clustering is
consecutive, so the dynamic programs below are exact there. On any other graph
they return the best clustering whose clusters are runs of the given order.
"""

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from cluster_editing.config import InputValidationError
from cluster_editing.graph import Graph
from cluster_editing.weights import negative_parts, positive_parts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Clustering:
    """A partition of the vertices into non-empty clusters."""

    clusters: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lists(cls, clusters: Iterable[Iterable[int]]) -> "Clustering":
        return cls(tuple(tuple(int(v) for v in cluster) for cluster in clusters))

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.clusters)

    def canonical(self) -> "Clustering":
        """Members ascending, clusters ordered by their first member."""
        return Clustering(tuple(sorted(tuple(sorted(c)) for c in self.clusters)))

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(c) for c in self.clusters}

    def labels(self, n: int) -> NDArray[np.int64]:
        """Cluster index of every vertex; rejects anything that is not a partition."""
        labels = np.full(n, -1, dtype=np.int64)
        for index, cluster in enumerate(self.clusters):
            if not cluster:
                raise InputValidationError(f"Cluster {index} is empty")
            for v in cluster:
                if not 0 <= v < n:
                    raise InputValidationError(f"Vertex {v} outside 0..{n - 1}")
                if labels[v] != -1:
                    raise InputValidationError(f"Vertex {v} appears in two clusters")
                labels[v] = index
        missing = np.flatnonzero(labels == -1)
        if missing.size:
            raise InputValidationError(
                f"{missing.size} vertices are not covered, first is {missing[0]}"
            )
        return labels


@dataclass
class DPResult:
    """Output of a frontier dynamic program."""

    clustering: Clustering
    opcount: int
    order: NDArray[np.int64]
    size: NDArray[np.int64]
    cost: float | None = None
    # opt(n-1) as accumulated by the DP; equals the cost only with full X init
    dp_value: float | None = None
    peak_storage: int = 0


def clustering_cost(graph: Graph, clustering: Clustering) -> float:
    """
    Total editing cost of a clustering.

    Sum of w- over pairs inside a cluster plus w+ over pairs split between
    clusters. A -inf pair inside a cluster costs w_max. Cross pairs are found
    through neighbour lists, which hold every positive pair.
    """
    labels = clustering.labels(graph.n)
    terms: list[float] = []

    for cluster in clustering.canonical().clusters:
        members = np.asarray(cluster, dtype=np.int64)
        for index in range(members.size - 1):
            w = graph.weights_to(int(members[index]), members[index + 1 :])
            terms.append(float(negative_parts(w, graph.w_max).sum()))

    for v in range(graph.n):
        neighbours = np.asarray(graph.neighbours(v), dtype=np.int64)
        neighbours = neighbours[neighbours > v]
        cut = neighbours[labels[neighbours] != labels[v]]
        if cut.size:
            terms.append(float(positive_parts(graph.weights_to(v, cut)).sum()))

    return math.fsum(terms)


def check_permutation(order: Sequence[int] | NDArray[np.int64], n: int) -> None:
    values = np.asarray(order, dtype=np.int64)
    if values.size != n or not np.array_equal(np.sort(values), np.arange(n)):
        raise InputValidationError(f"order is not a permutation of 0..{n - 1}")


def extract_clusters(
    size: Sequence[int] | NDArray[np.int64], order: Sequence[int] | NDArray[np.int64]
) -> Clustering:
    """
    Walk the size array backwards, emitting the last cluster of every prefix.

    Cluster ending at rank j is order[j - size[j]] .. order[j]. The walk runs
    while j >= 0 so a leading singleton is not dropped.
    """
    sizes = np.asarray(size, dtype=np.int64)
    ranks = np.arange(sizes.size)
    if sizes.size and (np.any(sizes > ranks) or np.any(sizes < 0)):
        bad = int(np.flatnonzero((sizes > ranks) | (sizes < 0))[0])
        raise InputValidationError(f"size[{bad}] = {sizes[bad]} exceeds its rank")

    clusters: list[tuple[int, ...]] = []
    j = sizes.size - 1
    while j >= 0:
        start = j - int(sizes[j])
        clusters.append(tuple(int(v) for v in order[start : j + 1]))
        j = start - 1
    return Clustering(tuple(clusters))


class DPFrontier:
    """
    Two-row state of the consecutive-cluster dynamic program.

    Vertices are pushed one rank at a time. For rank j the row holds
    opt'(j, i) for i = 0 .. bound, where i + 1 is the size of the last cluster.
    Entries of the previous row beyond its explored frontier count as w_max.
    With ``full_cost`` the row starts from X = sum of w+ to all earlier
    vertices, which makes opt(j) the true prefix cost; otherwise X = 0, which
    shifts each row by a constant and leaves the argmin unchanged.
    """

    def __init__(self, graph: Graph, full_cost: bool = False):
        self.graph = graph
        self.full_cost = full_cost
        n = graph.n
        self.order = np.empty(n, dtype=np.int64)
        self.rank = np.full(n, -1, dtype=np.int64)
        self.size = np.zeros(n, dtype=np.int64)
        self.opt = np.zeros(n, dtype=np.float64)
        self.prev_row: NDArray[np.float64] = np.empty(0, dtype=np.float64)
        self.length = 0
        self.opcount = 0
        self.peak_storage = 0

    def recent(self, count: int) -> NDArray[np.int64]:
        """The last ``count`` placed vertices, most recent first."""
        j = self.length
        return self.order[max(j - count, 0) : j][::-1]

    def push(self, vertex: int, bound: int) -> int:
        """
        Place ``vertex`` at the next rank and evaluate opt'(j, 1..bound).

        Returns:
            size(j), the smallest argmin of the new row
        """
        j = self.length
        self.order[j] = vertex
        self.rank[vertex] = j

        if j == 0:
            row = np.zeros(1, dtype=np.float64)
        else:
            bound = max(0, min(bound, j))
            span = j if self.full_cost else bound
            weights = self.graph.weights_to(vertex, self.recent(span))
            x0 = float(positive_parts(weights).sum()) if self.full_cost else 0.0

            row = np.empty(bound + 1, dtype=np.float64)
            row[0] = x0 + float(self.prev_row.min())
            if bound:
                prev = self.prev_row[:bound]
                if prev.size < bound:
                    padding = np.full(bound - prev.size, self.graph.w_max)
                    prev = np.concatenate([prev, padding])
                row[1:] = (x0 - np.cumsum(weights[:bound])) + prev
            self.opcount += bound

        best = int(np.argmin(row))
        self.size[j] = best
        self.opt[j] = row[best]
        self.peak_storage = max(self.peak_storage, self.prev_row.size + row.size)
        self.prev_row = row
        self.length += 1
        return best

    def clustering(self) -> Clustering:
        return extract_clusters(self.size[: self.length], self.order[: self.length])


def exact_dp_weighted(
    graph: Graph, order: Sequence[int] | NDArray[np.int64] | None = None
) -> DPResult:
    """
    Optimal clustering among those whose clusters are consecutive in ``order``.

    Every opt'(j, i) with 1 <= i <= j is evaluated, n(n-1)/2 in total. Ties go
    to the smallest last cluster.

    Args:
        graph: weighted graph
        order: permutation of the vertices, identity when omitted

    Returns:
        DPResult with the true clustering cost
    """
    n = graph.n
    ranks = np.arange(n, dtype=np.int64) if order is None else np.asarray(order)
    check_permutation(ranks, n)

    frontier = DPFrontier(graph, full_cost=True)
    for j in range(n):
        frontier.push(int(ranks[j]), j)

    clustering = frontier.clustering()
    cost = clustering_cost(graph, clustering)
    logger.info(
        f"Exact DP on {n} vertices: {len(clustering)} clusters, cost {cost:.6f}, "
        f"{frontier.opcount} opt' values"
    )
    return DPResult(
        clustering=clustering,
        opcount=frontier.opcount,
        order=frontier.order,
        size=frontier.size,
        cost=cost,
        dp_value=float(frontier.opt[-1]) if n else 0.0,
        peak_storage=frontier.peak_storage,
    )


def backward_degrees(graph: Graph) -> NDArray[np.int64]:
    """
    deg+(v): edges (w >= 0) from v to vertices before it in coordinate order.

    On a 1D point graph these neighbours are exactly v-1, .., v-deg+(v).
    """
    degrees = np.zeros(graph.n, dtype=np.int64)
    for j in range(1, graph.n):
        w = graph.weights_to(j, np.arange(j, dtype=np.int64))
        degrees[j] = int(np.count_nonzero(w >= 0))
    return degrees


def exact_dp_unweighted(graph: Graph) -> DPResult:
    """
    Optimal cluster editing of an unweighted 1D point graph (vertices sorted
    left to right), using opt'(j, i) = opt'(j-1, i-1) + |i - deg+(v_j)|.
    """
    n = graph.n
    degrees = backward_degrees(graph)
    size = np.zeros(n, dtype=np.int64)
    opt = np.zeros(n, dtype=np.int64)
    prev = np.zeros(1, dtype=np.int64)
    opcount = 0

    for j in range(1, n):
        d = int(degrees[j])
        row = np.empty(j + 1, dtype=np.int64)
        row[0] = int(prev.min()) + d
        row[1:] = prev + np.abs(np.arange(1, j + 1) - d)
        opcount += j
        size[j] = int(np.argmin(row))
        opt[j] = row[size[j]]
        prev = row

    order = np.arange(n, dtype=np.int64)
    clustering = extract_clusters(size, order)
    cost = float(opt[-1]) if n else 0.0
    logger.info(f"Unweighted DP on {n} vertices: cost {cost:.0f}")
    return DPResult(
        clustering=clustering,
        opcount=opcount,
        order=order,
        size=size,
        cost=cost,
        dp_value=cost,
    )
