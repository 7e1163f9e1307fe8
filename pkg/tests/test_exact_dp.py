import itertools

import numpy as np
import pytest
from conftest import random_point_graph, random_weighted_graph

from cluster_editing.config import InputValidationError, PointWeightKind
from cluster_editing.exact_dp import (
    Clustering,
    DPFrontier,
    backward_degrees,
    check_permutation,
    clustering_cost,
    exact_dp_unweighted,
    exact_dp_weighted,
    extract_clusters,
)
from cluster_editing.graph import PointGraph, WeightedGraph


def consecutive_clusterings(order: list[int]):
    """Every split of ``order`` into runs."""
    n = len(order)
    for cuts in itertools.product([False, True], repeat=max(n - 1, 0)):
        clusters, current = [], [order[0]]
        for cut, v in zip(cuts, order[1:]):
            if cut:
                clusters.append(current)
                current = []
            current.append(v)
        clusters.append(current)
        yield Clustering.from_lists(clusters)


def naive_cost(graph, clustering: Clustering) -> float:
    labels = clustering.labels(graph.n)
    total = 0.0
    for a in range(graph.n):
        for b in range(a + 1, graph.n):
            w = graph.weight(a, b)
            if labels[a] == labels[b]:
                total += min(max(-w, 0.0), graph.w_max)
            else:
                total += max(w, 0.0)
    return total


def test_extract_clusters_walks_back_to_rank_zero():
    clustering = extract_clusters([0, 0, 1, 0], [0, 1, 2, 3])
    assert clustering.clusters == ((3,), (1, 2), (0,))


def test_extract_clusters_follows_the_order():
    clustering = extract_clusters([0, 1, 2, 0], [5, 2, 9, 1])
    assert clustering.clusters == ((1,), (5, 2, 9))


def test_extract_clusters_rejects_sizes_beyond_rank():
    with pytest.raises(InputValidationError):
        extract_clusters([0, 2, 0], [0, 1, 2])
    with pytest.raises(InputValidationError):
        extract_clusters([0, -1], [0, 1])


def test_extract_clusters_of_nothing():
    assert len(extract_clusters([], [])) == 0


def test_clustering_helpers():
    clustering = Clustering.from_lists([[4, 2], [0], [3, 1]])
    assert clustering.canonical().clusters == ((0,), (1, 3), (2, 4))
    assert clustering.as_sets() == {frozenset({2, 4}), frozenset({0}), frozenset({1, 3})}
    np.testing.assert_array_equal(clustering.labels(5), [1, 2, 0, 2, 0])


@pytest.mark.parametrize(
    "clusters", [[[0, 1], [1, 2]], [[0, 1]], [[0, 1, 2, 3]], [[0, 1, 2], []]]
)
def test_labels_reject_non_partitions(clusters):
    with pytest.raises(InputValidationError):
        Clustering.from_lists(clusters).labels(3)


def test_check_permutation():
    check_permutation([2, 0, 1], 3)
    for bad in ([0, 1], [0, 0, 1], [0, 1, 3]):
        with pytest.raises(InputValidationError):
            check_permutation(bad, 3)


def test_clustering_cost_of_example_graph(example_graph):
    best = Clustering.from_lists([[0, 1, 2, 3], [4, 5, 6]])
    assert clustering_cost(example_graph, best) == 2.0
    singletons = Clustering.from_lists([[v] for v in range(7)])
    assert clustering_cost(example_graph, singletons) == 9.0


def test_missing_pair_inside_a_cluster_costs_w_max():
    graph = WeightedGraph(2, w_max=1e15)
    assert clustering_cost(graph, Clustering.from_lists([[0, 1]])) == 1e15
    assert clustering_cost(graph, Clustering.from_lists([[0], [1]])) == 0.0


@pytest.mark.parametrize("execution_number", range(20))
def test_clustering_cost_matches_pairwise_sum(execution_number):
    rng = np.random.default_rng(execution_number)
    n = int(rng.integers(2, 25))
    graph = random_weighted_graph(execution_number, n)
    labels = rng.integers(0, max(n // 3, 1), n)
    clustering = Clustering.from_lists(
        np.flatnonzero(labels == k).tolist() for k in np.unique(labels)
    )
    assert clustering_cost(graph, clustering) == pytest.approx(
        naive_cost(graph, clustering), rel=1e-12
    )


def test_exact_dp_trivial_sizes():
    empty = exact_dp_weighted(WeightedGraph(0))
    assert len(empty.clustering) == 0
    assert empty.cost == 0.0
    assert empty.opcount == 0

    single = exact_dp_weighted(WeightedGraph(1))
    assert single.clustering.clusters == ((0,),)
    assert single.opcount == 0


@pytest.mark.parametrize("n", [2, 3, 10, 57])
def test_exact_dp_evaluates_every_prefix_size(n):
    graph = random_point_graph(n, n, l=0.1)
    result = exact_dp_weighted(graph)
    assert result.opcount == n * (n - 1) // 2


def test_exact_dp_on_example_graph(example_graph):
    result = exact_dp_weighted(example_graph)
    assert result.cost == 2.0
    assert result.clustering.as_sets() == {frozenset({0, 1, 2, 3}), frozenset({4, 5, 6})}


def test_exact_dp_respects_the_given_order(example_graph):
    # the two true clusters interleave, so no split of this order reaches cost 2
    order = [0, 4, 1, 5, 2, 6, 3]
    result = exact_dp_weighted(example_graph, order)
    assert result.cost > 2.0
    np.testing.assert_array_equal(result.order, order)
    for cluster in result.clustering:
        ranks = sorted(order.index(v) for v in cluster)
        assert ranks == list(range(ranks[0], ranks[-1] + 1))


@pytest.mark.parametrize("execution_number", range(30))
def test_exact_dp_is_optimal_among_consecutive_clusterings(execution_number):
    rng = np.random.default_rng(execution_number)
    n = int(rng.integers(1, 10))
    graph = random_weighted_graph(execution_number, n, density=0.8)
    order = rng.permutation(n).tolist()

    result = exact_dp_weighted(graph, order)
    best = min(clustering_cost(graph, c) for c in consecutive_clusterings(order))
    assert result.cost <= best + 1e-9 * max(1.0, abs(best))


@pytest.mark.parametrize("execution_number", range(20))
def test_dp_value_is_the_clustering_cost(execution_number):
    graph = random_point_graph(execution_number, 40)
    result = exact_dp_weighted(graph)
    assert result.dp_value == pytest.approx(result.cost, rel=1e-9, abs=1e-9)


def test_exact_dp_keeps_two_rows():
    graph = random_point_graph(3, 30, l=0.2)
    result = exact_dp_weighted(graph)
    assert result.peak_storage == 30 + 29


def test_frontier_pushes_without_full_cost_shift_rows():
    graph = random_point_graph(5, 12, l=0.3)
    shifted, full = DPFrontier(graph), DPFrontier(graph, full_cost=True)
    for v in range(graph.n):
        shifted.push(v, v)
        full.push(v, v)
    np.testing.assert_array_equal(shifted.size, full.size)
    assert full.clustering() == shifted.clustering()
    np.testing.assert_array_equal(shifted.recent(3), [11, 10, 9])


def test_backward_degrees_of_unit_path():
    graph = PointGraph(np.array([0.0, 0.5, 1.0, 1.8]), l=1.0, kind=PointWeightKind.UNIT)
    np.testing.assert_array_equal(backward_degrees(graph), [0, 1, 2, 1])


def test_unweighted_dp_on_three_point_path():
    graph = PointGraph(np.array([0.0, 1.0, 2.0]), l=1.0, kind=PointWeightKind.UNIT)
    result = exact_dp_unweighted(graph)
    assert result.cost == 1.0
    assert clustering_cost(graph, result.clustering) == 1.0


@pytest.mark.parametrize("execution_number", range(30))
def test_unweighted_dp_matches_weighted_dp_on_unit_graphs(execution_number):
    rng = np.random.default_rng(execution_number)
    graph = random_point_graph(
        execution_number, int(rng.integers(1, 40)), kind=PointWeightKind.UNIT
    )
    unweighted = exact_dp_unweighted(graph)
    weighted = exact_dp_weighted(graph)
    assert unweighted.cost == weighted.cost
    assert clustering_cost(graph, unweighted.clustering) == unweighted.cost
    assert float(unweighted.cost).is_integer()
    assert unweighted.opcount == graph.n * (graph.n - 1) // 2

