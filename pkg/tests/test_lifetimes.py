"""
Tests for lifetime assignment
"""

from collections import Counter

import pytest

from influence_tracker.exceptions import ConfigurationError, InvalidInteractionError
from influence_tracker.graph import TdnGraph
from influence_tracker.lifetimes import LifetimeAssigner, assign_lifetimes
from influence_tracker.models import Interaction, LifetimePolicy, RawInteraction

BATCH = [RawInteraction(1, 2, 4), RawInteraction(2, 3, 4), RawInteraction(3, 1, 4)]


def test_infinite_policy():
    interactions = assign_lifetimes(BATCH, LifetimePolicy.parse("infinite"))
    assert interactions == [Interaction(1, 2, 4), Interaction(2, 3, 4), Interaction(3, 1, 4)]


def test_constant_policy():
    interactions = assign_lifetimes(BATCH, LifetimePolicy.parse("const:7"))
    assert [interaction.lifetime for interaction in interactions] == [7, 7, 7]
    assert all(interaction.arrival == 4 for interaction in interactions)


def test_arrival_override():
    assigned = LifetimeAssigner(LifetimePolicy.parse("const:2")).assign(BATCH, arrival=0)
    assert {interaction.arrival for interaction in assigned.interactions} == {0}


def test_column_policy():
    """Test that lifetimes are read from the fourth input column"""
    batch = [RawInteraction(12, 34, 5, 2)]
    assert assign_lifetimes(batch, LifetimePolicy.parse("column")) == [Interaction(12, 34, 5, 2)]


def test_column_policy_missing_value():
    with pytest.raises(InvalidInteractionError, match="missing lifetime"):
        assign_lifetimes([RawInteraction(1, 2, 0)], LifetimePolicy.parse("column"))


def test_rejections_are_collected():
    """Test that bad records are rejected individually and the rest kept"""
    batch = [
        RawInteraction(1, 2, 0, 3),
        RawInteraction(2, 2, 0, 3),
        RawInteraction(2, 3, 0, 9),
        RawInteraction(3, 4, 0, 0),
    ]
    assigned = LifetimeAssigner(LifetimePolicy.parse("column", max_lifetime=5)).assign(batch)
    assert assigned.interactions == [Interaction(1, 2, 0, 3)]
    assert [error.record for error in assigned.rejected] == batch[1:]


def test_mixed_timestamps_rejected():
    with pytest.raises(ConfigurationError):
        LifetimeAssigner(LifetimePolicy()).assign([RawInteraction(1, 2, 0), RawInteraction(2, 3, 1)])


def test_geometric_draws_are_bounded_and_reproducible():
    """Test the truncated geometric law on 1..L"""
    policy = LifetimePolicy.parse("geom:0.05", max_lifetime=10, seed=11)
    draws = LifetimeAssigner(policy).draw(2000)
    assert min(draws) >= 1
    assert max(draws) <= 10
    assert LifetimeAssigner(policy).draw(2000) == draws
    # mass (1-p)^(l-1) p is decreasing in l
    counts = Counter(draws)
    assert counts[1] > counts[10]


def test_geometric_tiny_p_under_short_bound():
    """Test that p * L far below one still draws one lifetime per record"""
    assigner = LifetimeAssigner(LifetimePolicy.parse("geom:0.00001", max_lifetime=2, seed=5))
    draws = [lifetime for _ in range(20) for lifetime in assigner.draw(20)]
    assert len(draws) == 400
    assert set(draws) == {1, 2}


def test_geometric_truncated_law():
    """Test draw frequencies against (1-p)^(l-1) p / (1 - (1-p)^L) for p = 0.3, L = 4"""
    p, bound = 0.3, 4
    draws = LifetimeAssigner(LifetimePolicy.parse(f"geom:{p}", max_lifetime=bound, seed=9)).draw(40000)
    counts = Counter(draws)
    mass = 1 - (1 - p) ** bound
    for lifetime in range(1, bound + 1):
        expected = (1 - p) ** (lifetime - 1) * p / mass
        assert counts[lifetime] / len(draws) == pytest.approx(expected, abs=0.01)


def test_geometric_p_one_is_always_one():
    assert LifetimeAssigner(LifetimePolicy.parse("geom:1", max_lifetime=3)).draw(5) == [1] * 5


def test_geometric_mean_without_bound():
    draws = LifetimeAssigner(LifetimePolicy.parse("geom:0.1", seed=3)).draw(20000)
    assert sum(draws) / len(draws) == pytest.approx(10, rel=0.05)


def test_column_policy_has_nothing_to_draw():
    with pytest.raises(ConfigurationError):
        LifetimeAssigner(LifetimePolicy.parse("column")).draw(3)


def test_steady_state_alive_edges(make_stream):
    """Test that geometric(0.1) at 100 edges per step keeps about m/p = 1000 edges alive"""
    batches = make_stream(1000, 100, 300, lifetime="geom:0.1", seed=2)
    graph = TdnGraph()
    alive = []
    for batch in batches:
        graph.insert_batch(batch)
        if graph.now >= 100:
            alive.append(graph.num_edges)
        graph.advance_time()
    assert sum(alive) / len(alive) == pytest.approx(1000, rel=0.15)
