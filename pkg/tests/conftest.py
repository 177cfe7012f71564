"""
Pytest configuration and fixtures
"""

import pytest

from influence_tracker.graph import TdnGraph
from influence_tracker.lifetimes import LifetimeAssigner
from influence_tracker.models import Interaction, LifetimePolicy, SyntheticSpec
from influence_tracker.oracle import InfluenceOracle, OracleCounter, brute_force_opt
from influence_tracker.streams import generate_synthetic


@pytest.fixture(name="oracle")
def oracle_fixture():
    """A fresh oracle with its own call counter"""
    return InfluenceOracle(OracleCounter(), seed_counts_itself=True)


@pytest.fixture(name="graph")
def graph_fixture():
    return TdnGraph()


@pytest.fixture(name="example_batches")
def example_batches_fixture():
    """
    The nine-edge worked example over nodes 1..7: six interactions at t=0 and
    three at t=1, with lifetimes 1, 2 or 3.
    """
    return [
        [
            Interaction(1, 2, 0, 1),
            Interaction(1, 3, 0, 1),
            Interaction(1, 4, 0, 2),
            Interaction(5, 3, 0, 3),
            Interaction(6, 4, 0, 1),
            Interaction(6, 7, 0, 1),
        ],
        [
            Interaction(5, 2, 1, 1),
            Interaction(7, 4, 1, 2),
            Interaction(7, 6, 1, 3),
        ],
    ]


@pytest.fixture(name="make_stream")
def make_stream_fixture():
    """
    Factory for small lifetime-annotated synthetic streams:
    make_stream(nodes, per_step, steps, lifetime="infinite", max_lifetime=None, seed=0,
                bias=1.0, audience=0)

    audience=0 draws uniform targets, so small streams cover general graph shapes.
    """

    def make(
        nodes, per_step, steps, lifetime="infinite", max_lifetime=None, seed=0, bias=1.0, audience=0
    ):
        spec = SyntheticSpec(
            nodes=nodes, edges_per_step=per_step, steps=steps, bias=bias, audience=audience, seed=seed
        )
        assigner = LifetimeAssigner(
            LifetimePolicy.parse(lifetime, max_lifetime=max_lifetime, seed=seed)
        )
        return [assigner.assign(batch).interactions for batch in generate_synthetic(spec)]

    return make


@pytest.fixture(name="replay")
def replay_fixture():
    """
    Drive a tracker over a stream against a brute-force reference. Yields
    (graph, solution, optimum) at every step, before the clock advances.
    """

    def replay(tracker, batches, k):
        reference = InfluenceOracle(OracleCounter())
        graph = TdnGraph()
        for batch in batches:
            graph.insert_batch(batch)
            solution = tracker.step(graph, batch)
            yield graph, solution, brute_force_opt(graph, k, reference)
            graph.advance_time()

    return replay
