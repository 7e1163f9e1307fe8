"""
Reference solvers: exhaustive cluster editing for tiny graphs and the sweep-line
maximal clique enumeration used by clique-based callers.
"""

import logging
import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from cluster_editing.config import CliqueLimitExceeded, InputValidationError
from cluster_editing.exact_dp import Clustering, clustering_cost
from cluster_editing.graph import Graph, Read, check_sorted_reads
from cluster_editing.weights import negative_part, positive_part

logger = logging.getLogger(__name__)

MAX_BRUTE_FORCE_VERTICES = 12

# Candidates whose vectorised cost is this close to the minimum are rescored exactly
_RESCORE_TOLERANCE = 1e-9


@lru_cache(maxsize=None)
def restricted_growth_strings(n: int) -> NDArray[np.int8]:
    """
    Every set partition of n labelled items, one restricted-growth string per row.

    Rows are in lexicographic order. Row r assigns item i to block rows[r, i].
    """
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rows = np.zeros((1, 1), dtype=np.int8)
    highest = np.zeros(1, dtype=np.int8)
    for _ in range(1, n):
        counts = highest.astype(np.int64) + 2
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        digits = (np.arange(int(counts.sum())) - starts).astype(np.int8)
        rows = np.column_stack([np.repeat(rows, counts, axis=0), digits])
        highest = np.maximum(np.repeat(highest, counts), digits)
    rows.setflags(write=False)
    return rows


def _clustering_from_labels(labels: NDArray[np.int8]) -> Clustering:
    blocks: dict[int, list[int]] = defaultdict(list)
    for v, label in enumerate(labels.tolist()):
        blocks[label].append(v)
    return Clustering.from_lists(blocks[label] for label in sorted(blocks))


def brute_force_cluster_edit(graph: Graph) -> tuple[Clustering, float]:
    """
    Minimum-cost clustering by trying every set partition.

    Ties go to the lexicographically smallest restricted-growth string.

    Args:
        graph: graph with at most 12 vertices

    Returns:
        (clustering, cost) with cost computed by clustering_cost
    """
    n = graph.n
    if n > MAX_BRUTE_FORCE_VERTICES:
        raise InputValidationError(
            f"Brute force handles at most {MAX_BRUTE_FORCE_VERTICES} vertices, got {n}"
        )
    partitions = restricted_growth_strings(n)
    totals = np.zeros(partitions.shape[0], dtype=np.float64)
    for a in range(n):
        for b in range(a + 1, n):
            w = graph.weight(a, b)
            inside = negative_part(w, graph.w_max)
            across = positive_part(w)
            totals += np.where(partitions[:, a] == partitions[:, b], inside, across)

    # near-ties are rescored with the exact cost
    best = float(totals.min())
    slack = _RESCORE_TOLERANCE * max(1.0, abs(best))
    shortlist = np.flatnonzero(totals <= best + slack)
    winner: Clustering | None = None
    winner_cost = math.inf
    for row in shortlist:
        candidate = _clustering_from_labels(partitions[row])
        cost = clustering_cost(graph, candidate)
        if cost < winner_cost:
            winner, winner_cost = candidate, cost

    assert winner is not None
    logger.debug(f"Brute force over {partitions.shape[0]} partitions: {winner_cost}")
    return winner, winner_cost


@dataclass
class CliqueSet:
    """Maximal cliques in the order the sweep emitted them, members ascending."""

    cliques: list[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.cliques)

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(c) for c in self.cliques}


class _EmittedIndex:
    """Emitted cliques with a per-vertex index for superset lookups."""

    def __init__(self) -> None:
        self.cliques: list[frozenset[int]] = []
        self._by_vertex: dict[int, list[int]] = defaultdict(list)

    def covers(self, clique: frozenset[int]) -> bool:
        pivot = min(clique, key=lambda v: len(self._by_vertex[v]))
        return any(clique <= self.cliques[i] for i in self._by_vertex[pivot])

    def add(self, clique: frozenset[int]) -> None:
        index = len(self.cliques)
        self.cliques.append(clique)
        for v in clique:
            self._by_vertex[v].append(index)


def _drop_subsets(sets: list[frozenset[int]]) -> list[frozenset[int]]:
    """Remove duplicates and sets contained in another set of the list."""
    kept: list[frozenset[int]] = []
    for s in sorted(set(sets), key=len, reverse=True):
        if not any(s <= other for other in kept):
            kept.append(s)
    return kept


def enumerate_maximal_cliques(
    reads: Sequence[Read], graph: Graph, max_active: int = 10_000
) -> CliqueSet:
    """
    Sweep the read endpoints keeping the maximal cliques among open reads.

    Edges are pairs with weight >= 0. Vertex v is the v-th read. When a read
    closes, every active clique containing it is emitted unless an earlier
    emitted clique contains it, and the read is dropped from the active cliques.
    At equal coordinates left endpoints go first, then smaller ids.

    Args:
        reads: reads sorted by left endpoint, the vertices of ``graph``
        graph: alignment graph over the reads
        max_active: abort when more active cliques than this are held

    Returns:
        CliqueSet of maximal cliques
    """
    check_sorted_reads(reads)
    if len(reads) != graph.n:
        raise InputValidationError(
            f"Graph has {graph.n} vertices but {len(reads)} reads were given"
        )

    events = sorted(
        [(r.left, 0, r.id, v) for v, r in enumerate(reads)]
        + [(r.right, 1, r.id, v) for v, r in enumerate(reads)]
    )

    active: list[frozenset[int]] = []
    emitted = _EmittedIndex()
    for _, closing, _, a in events:
        with_a = [c for c in active if a in c]
        without_a = [c for c in active if a not in c]

        if not closing:
            neighbours = np.asarray(graph.neighbours(a), dtype=np.int64)
            weights = graph.weights_to(a, neighbours)
            adjacent = frozenset(neighbours[weights >= 0].tolist())

            grown: list[frozenset[int]] = [frozenset({a})]
            untouched: list[frozenset[int]] = []
            for clique in without_a:
                common = clique & adjacent
                if common:
                    grown.append(common | {a})
                if common != clique:
                    untouched.append(clique)
            active = untouched + _drop_subsets(grown)
            if len(active) > max_active:
                raise CliqueLimitExceeded(
                    f"{len(active)} active cliques after opening read "
                    f"{reads[a].id}, limit is {max_active}"
                )
            continue

        for clique in with_a:
            if not emitted.covers(clique):
                emitted.add(clique)
        shrunk = [c - {a} for c in with_a if len(c) > 1]
        active = _drop_subsets(without_a + shrunk)

    cliques = [tuple(sorted(c)) for c in emitted.cliques]
    logger.info(f"Enumerated {len(cliques)} maximal cliques over {len(reads)} reads")
    return CliqueSet(cliques)
