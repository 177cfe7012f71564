"""
Tests for greedy, lazy greedy, random and brute-force baselines
"""

import math

import pytest

from influence_tracker.algorithms import (
    BruteForceTracker,
    GreedyTracker,
    RandomTracker,
    greedy,
    lazy_greedy,
    random_k,
)
from influence_tracker.graph import TdnGraph
from influence_tracker.models import Interaction
from influence_tracker.oracle import InfluenceOracle, OracleCounter, brute_force_opt


@pytest.fixture(name="example_graph")
def example_graph_fixture(example_batches):
    graph = TdnGraph()
    graph.insert_batch(example_batches[0])
    return graph


def test_greedy_example(oracle: InfluenceOracle, example_graph: TdnGraph):
    """Test that greedy picks node 1 (spread 4) and then node 6 (gain 2)"""
    assert greedy(example_graph, 2, oracle) == ({1, 6}, 6)
    assert oracle.counter.calls == 7 + 6


def test_lazy_greedy_example(oracle: InfluenceOracle, example_graph: TdnGraph):
    """Test that lazy evaluation re-checks only two stale gains"""
    assert lazy_greedy(example_graph, 2, oracle) == ({1, 6}, 6)
    assert oracle.counter.calls == 7 + 2


def test_greedy_stops_at_zero_gain(oracle: InfluenceOracle, graph: TdnGraph):
    graph.insert_batch([Interaction(1, 2, 0)])
    assert greedy(graph, 3, oracle) == ({1}, 2)
    assert lazy_greedy(graph, 3, oracle) == ({1}, 2)


def test_greedy_on_empty_graph(oracle: InfluenceOracle, graph: TdnGraph):
    assert greedy(graph, 2, oracle) == (frozenset(), 0)
    assert lazy_greedy(graph, 2, oracle) == (frozenset(), 0)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_lazy_matches_greedy(make_stream, k):
    """Test identical output with no more oracle calls, 125 graphs per k"""
    for seed in range(125):
        graph = TdnGraph()
        for batch in make_stream(25, 1 + seed % 6, 6, seed=seed, audience=seed % 4):
            graph.insert_batch(batch)
            graph.advance_time()
        plain, lazy = InfluenceOracle(), InfluenceOracle()
        assert lazy_greedy(graph, k, lazy) == greedy(graph, k, plain)
        assert lazy.counter.calls <= plain.counter.calls


def test_greedy_near_optimal(make_stream):
    """Test the (1 - 1/e) guarantee against brute force"""
    for seed in range(20):
        graph = TdnGraph()
        for batch in make_stream(10, 3, 4, seed=seed):
            graph.insert_batch(batch)
            graph.advance_time()
        optimum = brute_force_opt(graph, 3, InfluenceOracle())
        assert greedy(graph, 3, InfluenceOracle()).value >= (1 - 1 / math.e) * optimum.value


def test_random_k_is_reproducible(example_graph: TdnGraph):
    picked = random_k(example_graph, 3, 42)
    assert len(picked) == 3
    assert picked <= example_graph.nodes
    assert random_k(example_graph, 3, 42) == picked
    assert random_k(example_graph, 10, 42) == example_graph.nodes


def test_trackers_skip_non_query_steps(example_graph: TdnGraph, example_batches):
    """Test that recompute-from-scratch baselines do no work between queries"""
    counter = OracleCounter()
    oracle = InfluenceOracle(counter)
    for tracker in (GreedyTracker(2, oracle), RandomTracker(2, oracle, seed=1), BruteForceTracker(2, oracle)):
        assert tracker.step(example_graph, example_batches[0], query=False) is None
        assert tracker.active_instances == 0
    assert counter.calls == 0


def test_tracker_names_and_answers(oracle: InfluenceOracle, example_graph: TdnGraph, example_batches):
    batch = example_batches[0]
    assert GreedyTracker(2, oracle).name == "lazy-greedy"
    assert GreedyTracker(2, oracle, lazy=False).name == "greedy"
    assert GreedyTracker(2, oracle).step(example_graph, batch) == ({1, 6}, 6)
    assert BruteForceTracker(2, oracle).step(example_graph, batch) == ({1, 6}, 6)

    solution = RandomTracker(2, oracle, seed=5).step(example_graph, batch)
    assert len(solution.nodes) == 2
    assert solution.value == oracle.spread(example_graph, solution.nodes)


def test_greedy_star_graph(oracle: InfluenceOracle, graph: TdnGraph):
    """Test that greedy takes the hub of a five-leaf star, then the lone edge"""
    graph.insert_batch([Interaction(0, leaf, 0) for leaf in range(1, 6)] + [Interaction(6, 7, 0)])
    assert greedy(graph, 1, oracle) == ({0}, 6)
    assert greedy(graph, 2, oracle) == ({0, 6}, 8)
    assert lazy_greedy(graph, 2, oracle) == ({0, 6}, 8)


def test_random_mean_below_greedy(make_stream):
    """Test that random seed sets average below greedy over 1000 draws"""
    graph = TdnGraph()
    for batch in make_stream(60, 5, 10, seed=4, audience=5):
        graph.insert_batch(batch)
        graph.advance_time()
    oracle = InfluenceOracle()
    best = greedy(graph, 3, oracle).value
    draws = [oracle.spread(graph, random_k(graph, 3, (seed, 0))) for seed in range(1000)]
    assert sum(draws) / len(draws) <= best


def test_trackers_report_affected_nodes(oracle: InfluenceOracle, example_graph: TdnGraph, example_batches):
    batch = example_batches[0]
    expected = len(oracle.affected_nodes(example_graph, batch))
    for tracker in (GreedyTracker(2, oracle), RandomTracker(2, oracle), BruteForceTracker(2, oracle)):
        tracker.step(example_graph, batch, query=False)
        assert tracker.last_affected == expected
