"""
HistApprox: a histogram of non-redundant SieveADN instances

Only instances at indices x_1 < x_2 < ... are kept, where instance A_x has processed
exactly the alive edges with remaining lifetime >= x. Missing instances are created
on demand by copying the successor and feeding it the backlog in between; instances
whose output is within a (1 - epsilon) factor of a neighbour are dropped.

Every adjacent pair (x_i, x_{i+1}) is kept in one of two states: no alive edge has a
remaining lifetime strictly between them, or a Certificate records a timestep at
which g(x_{i+1}) >= (1 - epsilon) g(x_i) held with no arrival strictly inside the
interval since. A pair split by an insertion keeps the certificate of the interval
it came from.
"""

import bisect
import logging
import math
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

from influence_tracker.algorithms.basic_reduction import check_lifetimes
from influence_tracker.algorithms.sieve_adn import SieveInstance, validate_parameters
from influence_tracker.config import settings
from influence_tracker.exceptions import LifetimeBoundError
from influence_tracker.graph import TdnGraph
from influence_tracker.models import Interaction, Solution
from influence_tracker.oracle import BACKLOG, QUERY, InfluenceOracle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PruneEvent:
    """
    One histogram decision at a timestep.
      - merge: right was the largest index with g(right) >= (1 - epsilon) g(left),
        and the indices strictly between them were dropped
      - insert: left was created from its successor right
      - skip: an arrival with lifetime strictly between left and right created no
        instance, because g(right) >= (1 - epsilon) g(left) already held
    """

    timestep: int
    kind: Literal["merge", "insert", "skip"]
    left: int
    right: int
    left_value: int | None = None
    right_value: int | None = None
    removed: tuple[int, ...] = ()
    lifetime: int | None = None


@dataclass(frozen=True)
class Certificate:
    """g(right) >= (1 - epsilon) g(left) held at timestep `since`"""

    right: int
    since: int


@dataclass(frozen=True)
class RedundancyPass:
    """Indices and g values seen by one ReduceRedundancy pass"""

    timestep: int
    indices: tuple[int, ...]
    values: dict[int, int]
    removed: tuple[int, ...]
    survivors: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class PairAudit:
    left: int
    right: int
    status: Literal["empty", "certified", "uncertified"]
    since: int | None = None


def find_redundant(
    indices: Sequence[int], values: dict[int, float], epsilon: float
) -> tuple[list[int], list[tuple[int, int]]]:
    """
    Walk the ascending indices; for each surviving i find the largest j > i with
    g(j) >= (1 - epsilon) g(i) and delete everything strictly between them.
    Returns (removed indices, (i, j) pairs found).
    """
    survivors = list(indices)
    removed: list[int] = []
    merges: list[tuple[int, int]] = []
    position = 0
    while position < len(survivors):
        left = survivors[position]
        floor = (1 - epsilon) * values[left]
        for candidate in range(len(survivors) - 1, position, -1):
            if values[survivors[candidate]] >= floor:
                merges.append((left, survivors[candidate]))
                removed.extend(survivors[position + 1 : candidate])
                del survivors[position + 1 : candidate]
                break
        position += 1
    return removed, merges


def size_bound(k: int, epsilon: float) -> int:
    """Logarithmic histogram size reference: 2 * ceil(log_{1/(1-eps)} k) + 4"""
    return 2 * math.ceil(math.log(k, 1 / (1 - epsilon))) + 4


class HistApprox:
    """The InstanceHistogram and its per-timestep driver"""

    def __init__(
        self,
        k: int,
        epsilon: float,
        oracle: InfluenceOracle,
        *,
        max_lifetime: int | None = None,
        refine: bool = False,
        log_size: int | None = None,
        on_pass: Callable[[RedundancyPass], None] | None = None,
    ):
        self.k = k
        self.epsilon = epsilon
        self.oracle = oracle
        self.max_lifetime = max_lifetime
        self.refine = refine
        self.indices: list[int] = []
        self.instances: dict[int, SieveInstance] = {}
        # left index -> certificate of the pair it opens
        self.certificates: dict[int, Certificate] = {}
        # certificate of the interval below the head, inherited from the last expired head
        self._front: Certificate | None = None
        self.pruning_log: deque[PruneEvent] = deque(maxlen=log_size or settings.pruning_log_size)
        self.on_pass = on_pass
        self.last_affected = 0
        # oldest timestep whose decisions may have been evicted from the log
        self._log_horizon: int | None = None
        validate_parameters(k, epsilon)

    @property
    def name(self) -> str:
        return "hist-approx-exact" if self.refine else "hist-approx"

    @property
    def active_instances(self) -> int:
        return len(self.indices)

    def _log(self, event: PruneEvent) -> None:
        if len(self.pruning_log) == self.pruning_log.maxlen:
            self._log_horizon = self.pruning_log[0].timestep
        self.pruning_log.append(event)

    def value(self, index: int) -> int:
        return self.instances[index].solution(self.oracle).value

    def values(self) -> dict[int, int]:
        """g_t(x) for every active index, read from the instances' maintained state"""
        return {index: self.value(index) for index in self.indices}

    def process_edges(self, graph: TdnGraph, lifetime: int, edges: Sequence[Interaction]) -> None:
        """Route one lifetime group of this timestep's arrivals into the histogram"""
        if lifetime < 1 or (self.max_lifetime is not None and lifetime > self.max_lifetime):
            raise LifetimeBoundError(f"lifetime {lifetime} outside 1..{self.max_lifetime}")

        position = bisect.bisect_left(self.indices, lifetime)
        present = position < len(self.indices) and self.indices[position] == lifetime
        for index in self.indices[: position + present]:
            self.instances[index].feed(edges, self.oracle)
        if not present:
            self._insert(graph, position, lifetime, edges)
        self.reduce_redundancy(graph)

    def _insert(self, graph: TdnGraph, position: int, lifetime: int, edges: Sequence[Interaction]) -> None:
        """
        Create A_lifetime at `position`, or certify its would-be neighbours instead
        when the new instance would be redundant on arrival.
        """
        now = graph.now
        if position == len(self.indices):
            # nothing alive has a remaining lifetime beyond the last index
            instance = SieveInstance(self.k, self.epsilon)
            inherited = None
        else:
            successor = self.indices[position]
            if position > 0:
                predecessor = self.indices[position - 1]
                left_value, right_value = self.value(predecessor), self.value(successor)
                if right_value >= (1 - self.epsilon) * left_value:
                    self.certificates[predecessor] = Certificate(successor, now)
                    self._log(
                        PruneEvent(now, "skip", predecessor, successor, left_value, right_value, lifetime=lifetime)
                    )
                    return
                inherited = self.certificates.get(predecessor)
                if inherited is not None and inherited.right == successor:
                    self.certificates[predecessor] = Certificate(lifetime, inherited.since)
                else:
                    inherited = None
            else:
                inherited = self._front

            instance = self.instances[successor].clone()
            # current-step arrivals reach the new instance below
            backlog = [
                interaction
                for interaction in graph.edges_with_remaining_lifetime_in(lifetime, successor)
                if interaction.arrival < now
            ]
            instance.feed(backlog, self.oracle, label=BACKLOG)
            if inherited is not None:
                self.certificates[lifetime] = Certificate(successor, inherited.since)
            self._log(PruneEvent(now, "insert", lifetime, successor))

        instance.feed(edges, self.oracle)
        self.indices.insert(position, lifetime)
        self.instances[lifetime] = instance

    def reduce_redundancy(self, graph: TdnGraph) -> list[int]:
        """Terminate epsilon-redundant instances; returns the removed indices"""
        values = self.values()
        before = tuple(self.indices)
        removed, merges = find_redundant(before, values, self.epsilon)
        for left, right in merges:
            self.certificates[left] = Certificate(right, graph.now)
            dropped = tuple(index for index in removed if left < index < right)
            if dropped:
                self._log(PruneEvent(graph.now, "merge", left, right, values[left], values[right], dropped))
        for index in removed:
            del self.instances[index]
            self.certificates.pop(index, None)
        if removed:
            gone = set(removed)
            self.indices = [index for index in self.indices if index not in gone]
            logger.debug("t=%d: pruned %s, histogram %s", graph.now, removed, self.indices)
        if self.on_pass is not None:
            self.on_pass(RedundancyPass(graph.now, before, values, tuple(removed), tuple(self.indices)))
        return removed

    def refine_head(self, graph: TdnGraph) -> Solution | None:
        """
        Answer from a scratch copy of the head fed the alive edges it never saw
        (remaining lifetime below x_1). The histogram itself is untouched.
        """
        if not self.indices or self.indices[0] == 1:
            return None
        head = self.indices[0]
        scratch = self.instances[head].clone()
        scratch.feed(graph.edges_with_remaining_lifetime_in(1, head), self.oracle, label=BACKLOG)
        return scratch.solution(self.oracle)

    def process_batch(self, graph: TdnGraph, batch: Sequence[Interaction]) -> None:
        """Route this timestep's arrivals in ascending lifetime order"""
        check_lifetimes(batch, self.max_lifetime)
        groups: dict[int, list[Interaction]] = {}
        for interaction in batch:
            groups.setdefault(interaction.lifetime, []).append(interaction)
        for lifetime in sorted(groups):
            self.process_edges(graph, lifetime, groups[lifetime])

    def query(self, graph: TdnGraph) -> Solution:
        """
        The head output, valued on G_t. With refine on, the refined head output
        replaces it when it spreads further.
        """
        if not self.indices:
            return Solution.empty()
        head = self.instances[self.indices[0]].solution(self.oracle)
        answer = head
        if head.nodes:
            answer = Solution(head.nodes, self.oracle.spread(graph, head.nodes, label=QUERY))
        refined = self.refine_head(graph) if self.refine else None
        if refined is not None and refined.value > answer.value:
            return refined
        return answer

    def shift(self) -> None:
        """Terminate A_1 if present and relabel every A_x as A_{x-1}"""
        if self.indices and self.indices[0] == 1:
            del self.instances[1]
            self.indices.pop(0)
            self._front = self.certificates.pop(1, None)
        self.indices = [index - 1 for index in self.indices]
        self.instances = {index - 1: instance for index, instance in self.instances.items()}
        self.certificates = {
            left - 1: Certificate(certificate.right - 1, certificate.since)
            for left, certificate in self.certificates.items()
        }

    def step(self, graph: TdnGraph, batch: Sequence[Interaction], *, query: bool = True) -> Solution | None:
        self.last_affected = len(self.oracle.affected_nodes(graph, batch))
        self.process_batch(graph, batch)
        solution = self.query(graph) if query else None
        if len(self.indices) > size_bound(self.k, self.epsilon):
            logger.warning(
                "t=%d: histogram holds %d instances, above 2*ceil(log k)+4 = %d",
                graph.now,
                len(self.indices),
                size_bound(self.k, self.epsilon),
            )
        self.shift()
        return solution

    def audit_pairs(self, graph: TdnGraph) -> list[PairAudit]:
        """
        Classify each adjacent index pair between process_batch and shift: "empty" when
        G_t holds no edge with remaining lifetime strictly between them, "certified" when a
        certificate covers the pair, otherwise "uncertified".
        """
        audits = []
        for left, right in zip(self.indices, self.indices[1:], strict=False):
            if right - left <= 1 or not graph.edges_with_remaining_lifetime_in(left + 1, right):
                audits.append(PairAudit(left, right, "empty"))
                continue
            certificate = self.certificates.get(left)
            if certificate is not None and certificate.right == right:
                audits.append(PairAudit(left, right, "certified", certificate.since))
            else:
                audits.append(PairAudit(left, right, "uncertified"))
        return audits

    @property
    def log_horizon(self) -> int | None:
        """Timestep before which pruning decisions may be missing from the log"""
        return self._log_horizon
