"""
Influence oracle: exact reachability spread, marginal gains and affected nodes

f_t(S) is the number of alive nodes reachable from S. With seed self-counting on
(the default) every alive seed reaches itself through the zero-length path.
"""

import logging
import math
import threading
from collections import Counter, deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations

from influence_tracker.config import settings
from influence_tracker.exceptions import SearchSpaceError
from influence_tracker.graph import Digraph
from influence_tracker.models import Interaction, Solution

logger = logging.getLogger(__name__)

UPDATE = "update"
QUERY = "query"
BACKLOG = "backlog"
BRUTE_FORCE = "brute-force"
QUERY_LABELS = frozenset({QUERY, BRUTE_FORCE})


class OracleCounter:
    """Monotone count of f_t evaluations, attributed by label"""

    def __init__(self):
        self._lock = threading.Lock()
        self.calls = 0
        self.by_label: Counter[str] = Counter()

    def tick(self, label: str = UPDATE) -> None:
        with self._lock:
            self.calls += 1
            self.by_label[label] += 1

    @property
    def update_calls(self) -> int:
        return self.calls - self.query_calls

    @property
    def query_calls(self) -> int:
        return sum(self.by_label[label] for label in QUERY_LABELS)

    def __repr__(self):
        return f"<OracleCounter(calls={self.calls}, by_label={dict(self.by_label)})>"


@dataclass
class Coverage:
    """
    What one seed set counts: visited holds the alive seeds and every node found
    from them, reached only the nodes entered through at least one edge.
    """

    visited: set[int] = field(default_factory=set)
    reached: set[int] = field(default_factory=set)

    def copy(self) -> "Coverage":
        return Coverage(set(self.visited), set(self.reached))

    def absorb(self, other: "Coverage") -> None:
        self.visited |= other.visited
        self.reached |= other.reached


_NOTHING: frozenset[int] = frozenset()


def _reach(
    graph: Digraph,
    seeds: Iterable[int],
    visited: set[int],
    reached: set[int],
    covered: Coverage | None = None,
) -> None:
    """
    Breadth-first traversal from seeds. visited collects every alive seed and node
    found; reached collects only nodes entered through at least one edge. Nodes
    already in covered are not collected again, and covered nodes are not expanded.
    """
    seen = covered.visited if covered is not None else _NOTHING
    entered = covered.reached if covered is not None else _NOTHING
    queue = deque()
    for seed in seeds:
        if seed in graph and seed not in visited and seed not in seen:
            visited.add(seed)
            queue.append(seed)
    while queue:
        node = queue.popleft()
        for successor in graph.successors(node):
            if successor not in entered:
                reached.add(successor)
            if successor not in visited and successor not in seen:
                visited.add(successor)
                queue.append(successor)


class InfluenceOracle:
    """Evaluates f_t on any Digraph and counts each evaluation once"""

    def __init__(self, counter: OracleCounter | None = None, *, seed_counts_itself: bool | None = None):
        self.counter = counter or OracleCounter()
        if seed_counts_itself is None:
            seed_counts_itself = settings.seed_counts_itself
        self.seed_counts_itself = seed_counts_itself

    def _size(self, visited: set[int], reached: set[int]) -> int:
        return len(visited) if self.seed_counts_itself else len(reached)

    def reachable(self, graph: Digraph, seeds: Iterable[int]) -> set[int]:
        """Nodes counted by spread(seeds); not an oracle call"""
        visited: set[int] = set()
        reached: set[int] = set()
        _reach(graph, seeds, visited, reached)
        return visited if self.seed_counts_itself else reached

    def spread(self, graph: Digraph, seeds: Iterable[int], *, label: str = UPDATE) -> int:
        self.counter.tick(label)
        visited: set[int] = set()
        reached: set[int] = set()
        _reach(graph, seeds, visited, reached)
        return self._size(visited, reached)

    def marginal_gain(
        self, graph: Digraph, base: Iterable[int], node: int, *, label: str = UPDATE
    ) -> int:
        """spread(base + {node}) - spread(base) in one traversal seeded with base's reach"""
        self.counter.tick(label)
        base = list(base)
        if node in base:
            return 0
        visited: set[int] = set()
        reached: set[int] = set()
        _reach(graph, base, visited, reached)
        before = self._size(visited, reached)
        _reach(graph, (node,), visited, reached)
        return self._size(visited, reached) - before

    def value(self, coverage: Coverage) -> int:
        """f of a maintained coverage; not an oracle call"""
        return self._size(coverage.visited, coverage.reached)

    def singleton_coverage(self, graph: Digraph, node: int, *, label: str = UPDATE) -> Coverage:
        """Coverage of {node}; value() of it is spread(graph, [node])"""
        self.counter.tick(label)
        coverage = Coverage()
        _reach(graph, (node,), coverage.visited, coverage.reached)
        return coverage

    def gain_coverage(
        self, graph: Digraph, covered: Coverage, node: int, *, label: str = UPDATE
    ) -> Coverage:
        """
        What node adds to the set whose coverage is `covered`; value() of the result
        is the marginal gain. One traversal pruned at covered nodes.
        """
        self.counter.tick(label)
        delta = Coverage()
        _reach(graph, (node,), delta.visited, delta.reached, covered)
        return delta

    def extend_coverage(self, graph: Digraph, covered: Coverage, new_edges: Iterable[Interaction]) -> None:
        """
        Bring `covered` up to date after new_edges were added to an addition-only
        graph. Only nodes that just became reachable are traversed; not an oracle call.
        """
        seeds = []
        for interaction in new_edges:
            if interaction.source in covered.visited:
                covered.reached.add(interaction.target)
                if interaction.target not in covered.visited:
                    seeds.append(interaction.target)
        if not seeds:
            return
        delta = Coverage()
        _reach(graph, seeds, delta.visited, delta.reached, covered)
        covered.absorb(delta)

    def affected_nodes(self, graph: Digraph, new_edges: Iterable[Interaction]) -> set[int]:
        """
        Nodes whose spread may have changed after inserting new_edges: everything
        that reaches a new edge's source (the source included), found by reverse
        traversal on the post-insertion graph. Not an oracle call.

        A target that first becomes alive with new_edges is left out unless it also
        reaches a new source. Its spread rises from 0 to at most 1, since it has no
        out-edges yet.
        """
        affected: set[int] = set()
        queue = deque()
        for interaction in new_edges:
            source = interaction.source
            if source in graph and source not in affected:
                affected.add(source)
                queue.append(source)
        while queue:
            node = queue.popleft()
            for predecessor in graph.predecessors(node):
                if predecessor not in affected:
                    affected.add(predecessor)
                    queue.append(predecessor)
        return affected


def brute_force_opt(
    graph: Digraph, k: int, oracle: InfluenceOracle, *, limit: int | None = None
) -> Solution:
    """
    Exact maximizer of f_t over seed sets of size <= k by enumeration. Ties go to the
    lexicographically smallest sorted node tuple.
    """
    if limit is None:
        limit = settings.brute_force_limit
    nodes = sorted(graph.nodes)
    size = min(k, len(nodes))
    if size <= 0:
        return Solution.empty()
    subsets = math.comb(len(nodes), size)
    if subsets > limit:
        raise SearchSpaceError(
            f"brute force over C({len(nodes)}, {size}) = {subsets} subsets exceeds limit {limit}"
        )

    logger.debug("brute force over %d subsets of size %d", subsets, size)
    # f_t is monotone, so some optimum has exactly min(k, |V_t|) nodes
    best, best_value = (), -1
    for subset in combinations(nodes, size):
        value = oracle.spread(graph, subset, label=BRUTE_FORCE)
        if value > best_value:
            best, best_value = subset, value
    return Solution(frozenset(best), best_value)
