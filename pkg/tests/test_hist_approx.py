"""
Tests for the HistApprox instance histogram
"""

import math
from collections import Counter

import numpy as np
import pytest

from influence_tracker.algorithms import BasicReduction, HistApprox, find_redundant
from influence_tracker.algorithms.hist_approx import PairAudit, size_bound
from influence_tracker.exceptions import LifetimeBoundError
from influence_tracker.graph import TdnGraph
from influence_tracker.models import Interaction
from influence_tracker.oracle import BACKLOG, InfluenceOracle


def test_find_redundant_removes_middle():
    """Test that x = {1, 3, 5} with g = (10, 9.5, 9.3) drops index 3"""
    removed, merges = find_redundant([1, 3, 5], {1: 10, 3: 9.5, 5: 9.3}, 0.1)
    assert removed == [3]
    assert merges == [(1, 5)]


def test_find_redundant_keeps_separated_values():
    removed, merges = find_redundant([1, 2, 4], {1: 10, 2: 8, 4: 6}, 0.1)
    assert removed == []
    assert merges == []


def test_find_redundant_never_removes_head_or_tail():
    removed, _ = find_redundant([1, 2, 3, 4], {1: 5, 2: 5, 3: 5, 4: 5}, 0.1)
    assert removed == [2, 3]


def test_size_bound():
    assert size_bound(10, 0.1) == 2 * math.ceil(math.log(10, 1 / 0.9)) + 4


def test_example_histogram(oracle: InfluenceOracle, example_batches):
    """Test the histogram indices through the worked example"""
    hist = HistApprox(2, 0.1, oracle, max_lifetime=3)
    graph = TdnGraph()
    first, second = example_batches

    graph.insert_batch(first)
    hist.process_batch(graph, first)
    assert hist.indices[0] == 1
    assert hist.indices[-1] == 3
    assert hist.query(graph).value >= 0.4 * 6 - 1e-9
    hist.shift()
    assert hist.indices[-1] == 2
    graph.advance_time()

    graph.insert_batch(second)
    hist.process_batch(graph, second)
    assert hist.indices[0] == 1
    assert hist.indices[-1] == 3
    for index in hist.indices:
        expected = graph.edges_with_remaining_lifetime_in(index, None)
        assert Counter(hist.instances[index].processed) == Counter(expected)


def test_rejects_lifetime_above_bound(oracle: InfluenceOracle, graph: TdnGraph):
    batch = [Interaction(1, 2, 0, 9)]
    graph.insert_batch(batch)
    with pytest.raises(LifetimeBoundError):
        HistApprox(2, 0.1, oracle, max_lifetime=5).process_batch(graph, batch)


def test_merge_and_audit(oracle: InfluenceOracle, graph: TdnGraph):
    """Test head insertion, a skipped middle arrival and the pair audit"""
    hist = HistApprox(1, 0.1, oracle)
    batch = [Interaction(1, 2, 0, 5)]
    graph.insert_batch(batch)
    hist.process_batch(graph, batch)
    assert hist.indices == [5]
    hist.shift()
    graph.advance_time()
    assert hist.indices == [4]

    batch = [Interaction(3, 4, 1, 1), Interaction(5, 6, 1, 2)]
    graph.insert_batch(batch)
    hist.process_batch(graph, batch)

    # g(4) = g(1) = 2, so lifetime 2 needs no instance of its own
    assert hist.indices == [1, 4]
    assert [event.kind for event in hist.pruning_log] == ["insert", "skip"]
    skip = hist.pruning_log[-1]
    assert (skip.left, skip.right, skip.lifetime) == (1, 4, 2)
    assert hist.audit_pairs(graph) == [PairAudit(1, 4, "certified", since=1)]
    for index in hist.indices:
        expected = graph.edges_with_remaining_lifetime_in(index, None)
        assert Counter(hist.instances[index].processed) == Counter(expected)


def test_backlog_feeds_new_middle_instance(oracle: InfluenceOracle, graph: TdnGraph):
    """Test that a new middle index receives older edges between it and its successor"""
    hist = HistApprox(1, 0.5, oracle)
    chain = [Interaction(10, 11, 0, 5), Interaction(11, 12, 0, 5)]
    batch = [Interaction(1, 2, 0, 3), *chain, Interaction(20, 21, 0, 8), Interaction(20, 22, 0, 8)]
    graph.insert_batch(batch)
    hist.process_batch(graph, batch)
    # g = 3 at every index, so the chain's index 5 is merged away between 3 and 8
    assert hist.indices == [3, 8]
    assert [(event.kind, event.removed) for event in hist.pruning_log] == [("merge", (5,))]
    assert hist.audit_pairs(graph) == [PairAudit(3, 8, "certified", since=0)]
    hist.shift()
    graph.advance_time()
    before = oracle.counter.by_label[BACKLOG]

    star = [Interaction(30, leaf, 1, 2) for leaf in range(31, 37)]
    batch = [*star, Interaction(40, 41, 1, 4)]
    graph.insert_batch(batch)
    hist.process_batch(graph, batch)

    inserted = [event for event in hist.pruning_log if event.kind == "insert"]
    assert [(event.timestep, event.left, event.right) for event in inserted] == [(1, 4, 7)]
    assert hist.indices == [2, 4, 7]
    assert oracle.counter.by_label[BACKLOG] > before
    assert set(chain) <= set(hist.instances[4].processed)
    for index in hist.indices:
        expected = graph.edges_with_remaining_lifetime_in(index, None)
        assert Counter(hist.instances[index].processed) == Counter(expected)
    assert {audit.status for audit in hist.audit_pairs(graph)} == {"empty"}


def test_refine_head_uses_every_alive_edge(oracle: InfluenceOracle, graph: TdnGraph):
    """Test that the refined answer sees edges below the head index"""
    hist = HistApprox(1, 0.1, oracle, refine=True)
    assert hist.name == "hist-approx-exact"
    batch = [Interaction(1, 2, 0, 1), Interaction(2, 3, 0, 1), Interaction(4, 5, 0, 3)]
    graph.insert_batch(batch)
    hist.process_batch(graph, batch)
    hist.indices.remove(1)
    del hist.instances[1]

    solution = hist.query(graph)
    assert solution == ({1}, 3)
    assert hist.indices == [3]
    assert len(hist.instances[3].processed) == 1


def test_refine_head_is_free_when_the_head_is_exact(oracle: InfluenceOracle, graph: TdnGraph):
    hist = HistApprox(1, 0.1, oracle, refine=True)
    batch = [Interaction(1, 2, 0, 1), Interaction(2, 3, 0, 2)]
    graph.insert_batch(batch)
    hist.process_batch(graph, batch)
    assert hist.indices[0] == 1
    calls = oracle.counter.calls
    assert hist.refine_head(graph) is None
    assert oracle.counter.calls == calls


def test_refined_answer_is_never_worse(make_stream):
    """Test that refinement leaves the histogram alone and never lowers the answer"""
    for seed in range(30):
        plain = HistApprox(2, 0.2, InfluenceOracle(), max_lifetime=6)
        refined = HistApprox(2, 0.2, InfluenceOracle(), max_lifetime=6, refine=True)
        graph = TdnGraph()
        for batch in make_stream(12, 1 + seed % 3, 15, lifetime="geom:0.3", max_lifetime=6, seed=seed):
            graph.insert_batch(batch)
            first = plain.step(graph, batch)
            second = refined.step(graph, batch)
            assert second.value >= first.value
            assert refined.indices == plain.indices
            graph.advance_time()


def test_log_horizon_marks_evicted_decisions(oracle: InfluenceOracle, graph: TdnGraph):
    hist = HistApprox(1, 0.1, oracle, log_size=1)
    assert hist.log_horizon is None
    batch = [Interaction(1, 2, 0, 5)]
    graph.insert_batch(batch)
    hist.step(graph, batch)
    graph.advance_time()
    batch = [Interaction(3, 4, 1, 1), Interaction(5, 6, 1, 2)]
    graph.insert_batch(batch)
    hist.step(graph, batch)
    assert [event.kind for event in hist.pruning_log] == ["skip"]
    assert hist.log_horizon == 1


@pytest.mark.parametrize("k, epsilon", [(3, 0.2), (2, 0.1), (2, 0.3)])
def test_structure_on_random_streams(make_stream, k, epsilon):
    """Test sorted indices, instance coverage, certified pairs and the size bound"""
    passes = []
    for seed in range(15):
        hist = HistApprox(k, epsilon, InfluenceOracle(), max_lifetime=6, on_pass=passes.append)
        graph = TdnGraph()
        for batch in make_stream(12, 1 + seed % 4, 25, lifetime="geom:0.25", max_lifetime=6, seed=seed):
            graph.insert_batch(batch)
            hist.process_batch(graph, batch)
            assert hist.indices == sorted(set(hist.indices))
            assert all(1 <= index <= 6 for index in hist.indices)
            for index in hist.indices:
                expected = graph.edges_with_remaining_lifetime_in(index, None)
                assert Counter(hist.instances[index].processed) == Counter(expected)

            assert len(hist.indices) <= size_bound(k, epsilon)
            values = hist.values()
            ordered = [values[index] for index in hist.indices]
            if ordered and min(ordered) > 0:
                ratio = max(ordered) / min(ordered)
                bound = 2 * math.ceil(math.log(ratio, 1 / (1 - epsilon))) + 2 if ratio > 1 else 2
                assert len(ordered) <= bound
            assert all(audit.status in ("empty", "certified") for audit in hist.audit_pairs(graph))

            hist.query(graph)
            hist.shift()
            graph.advance_time()

    assert passes
    for report in passes:
        survivors = report.survivors
        for left, right in zip(survivors, survivors[2:], strict=False):
            assert report.values[right] < (1 - epsilon) * report.values[left]


@pytest.mark.parametrize("refine, factor", [(False, 1 / 3), (True, 1 / 2)])
@pytest.mark.parametrize("lifetime", ["geom:0.3", "const:4"])
def test_approximation(make_stream, replay, lifetime, refine, factor):
    """Test value >= (1/3 - eps) OPT, or (1/2 - eps) OPT with head refinement, on 100 streams"""
    rng = np.random.default_rng(31)
    violations = []
    for seed in range(100):
        k = int(rng.integers(1, 4))
        epsilon = float(rng.choice([0.1, 0.2]))
        batches = make_stream(
            int(rng.integers(4, 13)),
            int(rng.integers(1, 4)),
            int(rng.integers(1, 13)),
            lifetime=lifetime,
            max_lifetime=6,
            seed=seed,
        )
        hist = HistApprox(k, epsilon, InfluenceOracle(), max_lifetime=6, refine=refine)
        for graph, solution, optimum in replay(hist, batches, k):
            if solution.value < (factor - epsilon) * optimum.value:
                violations.append((seed, graph.now, solution, optimum))
    assert violations == []


def test_fewer_instances_than_basic_reduction(make_stream):
    """Test that a sliding window keeps far fewer instances and calls than the full ring"""
    batches = make_stream(60, 3, 60, lifetime="const:30", max_lifetime=30, seed=4)
    hist_oracle, ring_oracle = InfluenceOracle(), InfluenceOracle()
    hist = HistApprox(3, 0.2, hist_oracle, max_lifetime=30)
    ring = BasicReduction(3, 0.2, 30, ring_oracle)
    graph = TdnGraph()
    for batch in batches:
        graph.insert_batch(batch)
        hist.step(graph, batch)
        ring.step(graph, batch)
        assert hist.active_instances <= ring.active_instances
        graph.advance_time()
    assert hist_oracle.counter.calls < ring_oracle.counter.calls
