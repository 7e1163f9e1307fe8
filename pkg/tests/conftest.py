import numpy as np
import pytest

from cluster_editing.config import AlignParams, PointWeightKind
from cluster_editing.graph import PointGraph, WeightedGraph


def complete_graph(
    n: int, weights: dict[tuple[int, int], float], default: float
) -> WeightedGraph:
    """Every pair gets ``default`` unless listed in ``weights``."""
    graph = WeightedGraph(n)
    for a in range(n):
        for b in range(a + 1, n):
            graph.set_weight(a, b, weights.get((a, b), weights.get((b, a), default)))
    return graph


@pytest.fixture
def params() -> AlignParams:
    return AlignParams()


@pytest.fixture
def example_graph() -> WeightedGraph:
    """
    Seven vertices (0-based) with edges 0-1, 1-2, 0-2, 1-3, 2-3, 3-4, 4-5, 4-6, 5-6.
    Best clustering is {0, 1, 2, 3}, {4, 5, 6} at cost 2.
    """
    edges = [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)]
    return complete_graph(7, {e: 1.0 for e in edges}, -1.0)


# Reads 1..5 (vertices 0..4) are one population and reads 6..10 (vertices 5..9)
# another; their positions interleave on the line.
INTERLEAVED_POSITIONS = {
    6: 0.6,
    1: 1.1,
    7: 1.5,
    2: 2.0,
    8: 2.7,
    3: 3.5,
    9: 3.8,
    4: 4.2,
    10: 4.8,
    5: 5.1,
}


@pytest.fixture
def interleaved_graph() -> WeightedGraph:
    weights = {}
    for a in range(1, 11):
        for b in range(a + 1, 11):
            distance = abs(INTERLEAVED_POSITIONS[a] - INTERLEAVED_POSITIONS[b])
            same = (a <= 5) == (b <= 5)
            weights[(a - 1, b - 1)] = 4.5 - distance if same else -5.0 - distance
    return complete_graph(10, weights, -1.0)


@pytest.fixture
def coordinate_order() -> list[int]:
    """Vertices of the interleaved graph sorted by position."""
    return [
        read - 1
        for read, _ in sorted(INTERLEAVED_POSITIONS.items(), key=lambda kv: kv[1])
    ]


@pytest.fixture
def side_vertex_graph() -> WeightedGraph:
    """
    A chain 1-2-3-4-6-7-8-9 of heavy edges with vertex 5 hanging off 2, 3 and 4
    (vertices are the labels minus one).
    """
    heavy = [(1, 2), (2, 3), (3, 4), (4, 6), (6, 7), (7, 8), (8, 9)]
    weights = {(a - 1, b - 1): 3.0 for a, b in heavy}
    weights.update({(3, 4): 2.5, (2, 4): 2.5, (1, 4): 2.5, (1, 3): 1.0, (0, 2): 1.0})
    return complete_graph(9, weights, -2.0)


def random_point_graph(
    seed: int,
    n: int,
    l: float | None = None,
    kind: PointWeightKind = PointWeightKind.F_L,
) -> PointGraph:
    rng = np.random.default_rng(seed)
    positions = np.sort(rng.random(n))
    if l is None:
        l = float(rng.uniform(0.05, 0.8))
    return PointGraph(positions, l, kind=kind)


def random_weighted_graph(seed: int, n: int, density: float = 0.6) -> WeightedGraph:
    """Random signed weights; missing pairs are -inf."""
    rng = np.random.default_rng(seed)
    graph = WeightedGraph(n)
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                graph.set_weight(a, b, float(rng.normal(0.0, 2.0)))
    return graph
