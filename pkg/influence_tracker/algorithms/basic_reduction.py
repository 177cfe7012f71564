"""
BasicReduction: a ring of L SieveADN instances shifted left every timestep

Instance A_i only processes edges whose lifetime is at least i, so the head A_1
has always processed exactly the alive edges of G_t.
"""

import logging
from collections import deque
from collections.abc import Sequence

from influence_tracker.algorithms.sieve_adn import SieveInstance
from influence_tracker.exceptions import ConfigurationError, LifetimeBoundError
from influence_tracker.graph import TdnGraph
from influence_tracker.models import Interaction, Solution
from influence_tracker.oracle import InfluenceOracle

logger = logging.getLogger(__name__)


def check_lifetimes(batch: Sequence[Interaction], max_lifetime: int | None) -> None:
    """Reject infinite lifetimes and lifetimes above max_lifetime"""
    for interaction in batch:
        if interaction.lifetime is None:
            raise LifetimeBoundError(f"{interaction} has an infinite lifetime")
        if max_lifetime is not None and interaction.lifetime > max_lifetime:
            raise LifetimeBoundError(
                f"{interaction} has lifetime {interaction.lifetime} > L = {max_lifetime}"
            )


class BasicReduction:
    """The InstanceRing A_1..A_L with shared k and epsilon"""

    name = "basic-reduction"

    def __init__(self, k: int, epsilon: float, max_lifetime: int, oracle: InfluenceOracle):
        if max_lifetime < 1:
            raise ConfigurationError(f"L must be >= 1, got {max_lifetime}")
        self.k = k
        self.epsilon = epsilon
        self.max_lifetime = max_lifetime
        self.oracle = oracle
        self.instances: deque[SieveInstance] = deque(
            SieveInstance(k, epsilon) for _ in range(max_lifetime)
        )
        self.last_affected = 0

    @property
    def active_instances(self) -> int:
        return len(self.instances)

    @property
    def head(self) -> SieveInstance:
        return self.instances[0]

    def feed(self, batch: Sequence[Interaction]) -> int:
        """
        Feed A_i the sub-batch of lifetime >= i, input order preserved. Returns the
        affected-set sizes summed over the instances fed.
        """
        check_lifetimes(batch, self.max_lifetime)
        work = 0
        for index, instance in enumerate(self.instances, start=1):
            edges = [interaction for interaction in batch if interaction.lifetime >= index]
            if not edges:
                # lifetimes only shrink from here on
                break
            work += instance.feed(edges, self.oracle)
        logger.debug("fed %d edges to the ring, %d affected across instances", len(batch), work)
        return work

    def query(self) -> Solution:
        return self.head.solution(self.oracle)

    def shift(self) -> None:
        """Terminate A_1, relabel A_i as A_{i-1} and append a fresh A_L"""
        self.instances.popleft()
        self.instances.append(SieveInstance(self.k, self.epsilon))

    def step(self, graph: TdnGraph, batch: Sequence[Interaction], *, query: bool = True) -> Solution | None:
        self.last_affected = len(self.oracle.affected_nodes(graph, batch))
        self.feed(batch)
        solution = self.query() if query else None
        self.shift()
        return solution
