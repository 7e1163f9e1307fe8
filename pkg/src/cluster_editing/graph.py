import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from cluster_editing.config import (
    DEFAULT_W_MAX,
    AlignParams,
    InputValidationError,
    PointGraphParams,
    PointWeightKind,
)
from cluster_editing.weights import NEG_INF, f_l_weights, pair_weights, unit_weights

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Read:
    """An aligned paired-end read: left endpoint and insert size in base pairs."""

    id: int
    left: float
    length: float

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise InputValidationError(
                f"Read {self.id} has non-positive length {self.length}"
            )

    @property
    def right(self) -> float:
        return self.left + self.length


def pair_weight(a: Read, b: Read, params: AlignParams) -> float:
    """Weight of the edge between two distinct reads (-inf when they do not overlap)."""
    if a.id == b.id:
        raise InputValidationError(f"Cannot weight read {a.id} against itself")
    return float(pair_weights(a.left, a.length, b.left, b.length, params))


class WeightedGraph:
    """
    Sparse weighted graph backed by one hashtable per vertex.

    Only finite-weight pairs are stored; looking up an absent pair yields -inf.
    The neighbour relation is symmetric and never contains self-pairs.
    """

    def __init__(self, n: int, w_max: float = DEFAULT_W_MAX):
        self.n = n
        self.w_max = w_max
        self._adjacency: list[dict[int, float]] = [{} for _ in range(n)]

    @classmethod
    def from_pairs(
        cls,
        n: int,
        pairs: Iterable[tuple[int, int, float]],
        w_max: float = DEFAULT_W_MAX,
    ) -> "WeightedGraph":
        graph = cls(n, w_max)
        for a, b, w in pairs:
            graph.set_weight(a, b, w)
        return graph

    def set_weight(self, a: int, b: int, w: float) -> None:
        if a == b:
            raise InputValidationError(f"Self-pair ({a}, {a}) is not allowed")
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise InputValidationError(f"Pair ({a}, {b}) outside 0..{self.n - 1}")
        if w == NEG_INF:
            self._adjacency[a].pop(b, None)
            self._adjacency[b].pop(a, None)
            return
        w = min(float(w), self.w_max)
        self._adjacency[a][b] = w
        self._adjacency[b][a] = w

    def weight(self, a: int, b: int) -> float:
        return self._adjacency[a].get(b, NEG_INF)

    def neighbours(self, v: int) -> list[int]:
        return list(self._adjacency[v])

    def weights_to(
        self, v: int, others: Sequence[int] | NDArray[np.int64]
    ) -> NDArray[np.float64]:
        adjacency = self._adjacency[v]
        return np.fromiter(
            (adjacency.get(int(u), NEG_INF) for u in others),
            dtype=np.float64,
            count=len(others),
        )

    def pairs(self) -> Iterator[tuple[int, int, float]]:
        """Stored pairs (a < b) in ascending order."""
        for a in range(self.n):
            for b in sorted(self._adjacency[a]):
                if a < b:
                    yield a, b, self._adjacency[a][b]

    @property
    def pair_count(self) -> int:
        return sum(len(adjacency) for adjacency in self._adjacency) // 2


class PointGraph:
    """
    Complete weighted graph on sorted points of a line, weights computed lazily.

    Every pair has a finite weight. ``neighbours(v)`` materialises only the
    points whose weight with v is at least ``neighbour_floor`` (which is never
    positive, so every positive edge is a neighbour pair).
    """

    def __init__(
        self,
        positions: NDArray[np.float64],
        l: float,
        kind: PointWeightKind = PointWeightKind.F_L,
        neighbour_floor: float = 0.0,
        w_max: float = DEFAULT_W_MAX,
    ):
        if neighbour_floor > 0:
            raise InputValidationError("neighbour_floor must not be positive")
        self.positions = np.asarray(positions, dtype=np.float64)
        if self.positions.size > 1 and np.any(np.diff(self.positions) < 0):
            raise InputValidationError("Point positions must be sorted ascending")
        self.n = int(self.positions.size)
        self.l = l
        self.kind = kind
        self.w_max = w_max

        if kind == PointWeightKind.F_L:
            f = neighbour_floor
            self.cutoff = l * (-f + np.sqrt(f * f + 4.0)) / 2.0
        else:
            self.cutoff = l if neighbour_floor > -1 else np.inf

    def _weights(self, distance: NDArray[np.float64]) -> NDArray[np.float64]:
        if self.kind == PointWeightKind.F_L:
            return f_l_weights(distance, self.l, self.w_max)
        return unit_weights(distance, self.l)

    def weight(self, a: int, b: int) -> float:
        if a == b:
            raise InputValidationError(f"Self-pair ({a}, {a}) is not allowed")
        distance = abs(self.positions[a] - self.positions[b])
        return float(self._weights(np.asarray(distance)))

    def weights_to(
        self, v: int, others: Sequence[int] | NDArray[np.int64]
    ) -> NDArray[np.float64]:
        idx = np.asarray(others, dtype=np.int64)
        return self._weights(np.abs(self.positions[idx] - self.positions[v]))

    def neighbours(self, v: int) -> NDArray[np.int64]:
        x = self.positions[v]
        lo = int(np.searchsorted(self.positions, x - self.cutoff, side="left"))
        hi = int(np.searchsorted(self.positions, x + self.cutoff, side="right"))
        window = np.arange(lo, hi, dtype=np.int64)
        return window[window != v]


Graph = WeightedGraph | PointGraph


def check_sorted_reads(reads: Sequence[Read]) -> None:
    """Reject reads that are not sorted by (left, id) or carry duplicate ids."""
    seen: set[int] = set()
    for i, read in enumerate(reads):
        if read.id in seen:
            raise InputValidationError(f"Duplicate read id {read.id}")
        seen.add(read.id)
        if i and (read.left, read.id) < (reads[i - 1].left, reads[i - 1].id):
            raise InputValidationError(
                f"Reads must be sorted by left endpoint; read {read.id} at "
                f"position {i} comes after read {reads[i - 1].id}"
            )


def overlapping_pairs(
    lefts: NDArray[np.float64], rights: NDArray[np.float64]
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    """
    Index pairs (i < j) of positively overlapping spans, for spans sorted by left.

    Span j > i overlaps span i iff left[j] < right[i], so the partners of i form
    the contiguous block i+1 .. hi(i)-1. Total work is O(n k).
    """
    n = lefts.size
    hi = np.searchsorted(lefts, rights, side="left")
    counts = np.maximum(hi - np.arange(n) - 1, 0)
    total = int(counts.sum())
    first = np.repeat(np.arange(n, dtype=np.int64), counts)
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    second = first + 1 + (np.arange(total, dtype=np.int64) - starts)
    return first, second


def build_alignment_graph(reads: Sequence[Read], params: AlignParams) -> WeightedGraph:
    """
    Build the read alignment graph.

    Vertex v is the v-th read of the sorted input. Only overlapping pairs are
    stored; all other pairs weigh -inf.

    Args:
        reads: reads sorted by left endpoint (ties by id)
        params: insert-size model

    Returns:
        WeightedGraph over len(reads) vertices
    """
    check_sorted_reads(reads)
    n = len(reads)
    lefts = np.fromiter((r.left for r in reads), dtype=np.float64, count=n)
    lengths = np.fromiter((r.length for r in reads), dtype=np.float64, count=n)

    first, second = overlapping_pairs(lefts, lengths + lefts)
    weights = pair_weights(
        lefts[first], lengths[first], lefts[second], lengths[second], params
    )

    graph = WeightedGraph.from_pairs(
        n, zip(first.tolist(), second.tolist(), weights.tolist()), params.w_max
    )

    logger.info(f"Built alignment graph with {n} reads and {len(weights)} pairs")
    return graph


def generate_point_graph(
    params: PointGraphParams,
) -> tuple[NDArray[np.float64], PointGraph]:
    """Place n uniform points on [0, 1] and weight every pair by its distance."""
    rng = np.random.default_rng(params.seed)
    positions = np.sort(rng.random(params.n))
    graph = PointGraph(
        positions,
        params.l,
        kind=params.kind,
        neighbour_floor=params.neighbour_floor,
        w_max=params.w_max,
    )
    return positions, graph
