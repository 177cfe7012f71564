"""
SieveADN: threshold sieving of the affected-node stream over an addition-only network
"""

import logging
import math
from collections.abc import Iterable, Sequence

from influence_tracker.exceptions import ConfigurationError
from influence_tracker.graph import AdditiveView, Digraph, TdnGraph
from influence_tracker.models import Interaction, Solution
from influence_tracker.oracle import UPDATE, Coverage, InfluenceOracle

logger = logging.getLogger(__name__)


def ladder_bounds(delta: float, k: int, epsilon: float) -> range:
    """Exponents i with (1+epsilon)^i in [delta, 2k*delta], both ends closed"""
    if delta <= 0:
        return range(0)
    base = 1 + epsilon
    low = math.ceil(math.log(delta, base))
    high = math.floor(math.log(2 * k * delta, base))
    # float log can land one off at exact powers
    while base ** (low - 1) >= delta:
        low -= 1
    while base**low < delta:
        low += 1
    while base ** (high + 1) <= 2 * k * delta:
        high += 1
    while base**high > 2 * k * delta:
        high -= 1
    return range(low, high + 1)


def validate_parameters(k: int, epsilon: float) -> None:
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    if not 0 < epsilon < 1:
        raise ConfigurationError(f"epsilon must lie in (0, 1), got {epsilon}")


class SieveState:
    """
    One SieveADN instance: the max singleton spread delta, the lazily maintained
    threshold ladder and one candidate list per threshold. Candidates are keyed by
    the ladder exponent i; the threshold itself is (1+epsilon)^i / 2k.

    Each candidate list carries the Coverage of its members, kept current as edges
    arrive, so f(S_theta) is read without an oracle call and a gain costs one call.
    The state is only valid on an addition-only graph.
    """

    def __init__(self, k: int, epsilon: float):
        validate_parameters(k, epsilon)
        self.k = k
        self.epsilon = epsilon
        self.delta = 0
        self.candidates: dict[int, list[int]] = {}
        self.coverage: dict[int, Coverage] = {}

    def __repr__(self):
        return f"<SieveState(k={self.k}, epsilon={self.epsilon}, delta={self.delta}, thresholds={len(self.candidates)})>"

    def threshold(self, exponent: int) -> float:
        return (1 + self.epsilon) ** exponent / (2 * self.k)

    @property
    def thresholds(self) -> list[float]:
        return [self.threshold(i) for i in sorted(self.candidates)]

    def value(self, exponent: int, oracle: InfluenceOracle) -> int:
        """f(S_theta) for the threshold with this exponent"""
        return oracle.value(self.coverage[exponent])

    def _rebuild_ladder(self) -> None:
        ladder = ladder_bounds(self.delta, self.k, self.epsilon)
        if self.candidates and ladder == range(min(self.candidates), max(self.candidates) + 1):
            return
        # dropped thresholds lose their candidates; new ones start empty
        self.candidates = {i: self.candidates.get(i, []) for i in ladder}
        self.coverage = {i: self.coverage[i] if i in self.coverage else Coverage() for i in ladder}
        logger.debug("delta=%s: ladder exponents %d..%d", self.delta, ladder.start, ladder.stop - 1)

    def process_batch(
        self,
        graph: Digraph,
        new_edges: Sequence[Interaction],
        affected: Iterable[int],
        oracle: InfluenceOracle,
        *,
        label: str = UPDATE,
    ) -> None:
        """
        Feed one batch through every threshold. graph already holds new_edges.
        Costs one call per affected node plus one per marginal gain evaluated.
        """
        for coverage in self.coverage.values():
            oracle.extend_coverage(graph, coverage, new_edges)

        nodes = sorted(affected)
        if not nodes:
            return

        singletons = {node: oracle.singleton_coverage(graph, node, label=label) for node in nodes}
        self.delta = max(self.delta, max(oracle.value(reach) for reach in singletons.values()))
        self._rebuild_ladder()

        for node in nodes:
            reach = singletons[node]
            single = oracle.value(reach)
            for exponent, members in self.candidates.items():
                if len(members) >= self.k:
                    continue
                theta = self.threshold(exponent)
                # submodularity: no gain exceeds the singleton spread
                if single < theta or node in members:
                    continue
                covered = self.coverage[exponent]
                gain = oracle.gain_coverage(graph, covered, node, label=label) if members else reach
                if oracle.value(gain) >= theta:
                    members.append(node)
                    covered.absorb(gain)

    def current_solution(self, oracle: InfluenceOracle) -> Solution:
        """The candidate set of maximum spread; ties go to the smallest threshold"""
        best = Solution.empty()
        for exponent in sorted(self.candidates):
            members = self.candidates[exponent]
            if not members:
                continue
            value = self.value(exponent, oracle)
            if value > best.value:
                best = Solution(frozenset(members), value)
        return best

    def clone(self) -> "SieveState":
        copy = SieveState(self.k, self.epsilon)
        copy.delta = self.delta
        copy.candidates = {i: list(members) for i, members in self.candidates.items()}
        copy.coverage = {i: coverage.copy() for i, coverage in self.coverage.items()}
        return copy


def new_sieve(k: int, epsilon: float) -> SieveState:
    return SieveState(k, epsilon)


class SieveAdn:
    """Tracks influential nodes over an addition-only network with a single sieve"""

    name = "sieve-adn"

    def __init__(self, k: int, epsilon: float, oracle: InfluenceOracle):
        self.state = SieveState(k, epsilon)
        self.oracle = oracle
        self.last_affected = 0

    @property
    def active_instances(self) -> int:
        return 1

    def step(self, graph: TdnGraph, batch: Sequence[Interaction], *, query: bool = True) -> Solution | None:
        if any(not interaction.infinite for interaction in batch):
            raise ConfigurationError(
                "SieveADN requires infinite lifetimes; use basic-reduction or hist-approx"
            )
        self.last_affected = len(self.oracle.affected_nodes(graph, batch))
        # a parallel copy of an alive pair changes no spread
        fresh = graph.new_pairs(batch)
        affected = self.oracle.affected_nodes(graph, fresh)
        self.state.process_batch(graph, fresh, affected, self.oracle)
        if not query:
            return None
        return self.state.current_solution(self.oracle)


class SieveInstance:
    """A SieveState bound to its own addition-only view of the edges it processed"""

    def __init__(self, k: int, epsilon: float):
        self.state = SieveState(k, epsilon)
        self.view = AdditiveView()

    def __repr__(self):
        return f"<SieveInstance(edges={len(self.view)}, delta={self.state.delta})>"

    @property
    def processed(self) -> list[Interaction]:
        return self.view.edges

    def feed(self, edges: Sequence[Interaction], oracle: InfluenceOracle, *, label: str = UPDATE) -> int:
        """Process a sub-batch; returns the size of its affected-node set"""
        if not edges:
            return 0
        fresh = self.view.add_edges(edges)
        affected = oracle.affected_nodes(self.view, fresh)
        self.state.process_batch(self.view, fresh, affected, oracle, label=label)
        return len(affected)

    def solution(self, oracle: InfluenceOracle) -> Solution:
        return self.state.current_solution(oracle)

    def clone(self) -> "SieveInstance":
        copy = SieveInstance(self.state.k, self.state.epsilon)
        copy.state = self.state.clone()
        copy.view = self.view.copy()
        return copy
