"""
Reference algorithms recomputed from scratch at every query
"""

import heapq
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from influence_tracker.graph import Digraph, TdnGraph
from influence_tracker.models import Interaction, Solution
from influence_tracker.oracle import QUERY, InfluenceOracle, brute_force_opt


def greedy(graph: Digraph, k: int, oracle: InfluenceOracle, *, label: str = QUERY) -> Solution:
    """
    k rounds, each adding the alive node of largest marginal gain (ties: smallest id).
    Stops early once every remaining gain is zero.
    """
    chosen: list[int] = []
    remaining = sorted(graph.nodes)
    value = 0
    for _ in range(k):
        best_node, best_gain = None, 0
        for node in remaining:
            gain = oracle.marginal_gain(graph, chosen, node, label=label)
            if gain > best_gain:
                best_node, best_gain = node, gain
        if best_node is None:
            break
        chosen.append(best_node)
        remaining.remove(best_node)
        value += best_gain
    return Solution(frozenset(chosen), value)


@dataclass(order=True)
class _QueueEntry:
    """LazyQueue entry; ordering puts the largest stale gain, then the smallest id, first"""

    negative_gain: int
    node: int
    evaluated_round: int


def lazy_greedy(graph: Digraph, k: int, oracle: InfluenceOracle, *, label: str = QUERY) -> Solution:
    """
    Greedy with a stale-gain priority queue (CELF). Stale gains upper-bound current
    ones by submodularity, so a fresh entry at the top is the greedy choice.
    """
    if k <= 0:
        return Solution.empty()
    queue = [
        _QueueEntry(-oracle.marginal_gain(graph, (), node, label=label), node, 0)
        for node in sorted(graph.nodes)
    ]
    heapq.heapify(queue)

    chosen: list[int] = []
    value = 0
    current_round = 0
    while queue and len(chosen) < k:
        top = queue[0]
        if top.evaluated_round == current_round:
            heapq.heappop(queue)
            if top.negative_gain == 0:
                break
            chosen.append(top.node)
            value -= top.negative_gain
            current_round += 1
            continue
        gain = oracle.marginal_gain(graph, chosen, top.node, label=label)
        heapq.heapreplace(queue, _QueueEntry(-gain, top.node, current_round))
    return Solution(frozenset(chosen), value)


def random_k(graph: Digraph, k: int, seed: int | Sequence[int]) -> frozenset[int]:
    """k alive nodes drawn uniformly without replacement, reproducible per seed"""
    nodes = sorted(graph.nodes)
    if k >= len(nodes):
        return frozenset(nodes)
    rng = np.random.default_rng(seed)
    picked = rng.choice(len(nodes), size=k, replace=False)
    return frozenset(nodes[int(position)] for position in picked)


class GreedyTracker:
    """Greedy (plain or lazy) re-run on the current graph at each query"""

    def __init__(self, k: int, oracle: InfluenceOracle, *, lazy: bool = True):
        self.k = k
        self.oracle = oracle
        self.lazy = lazy
        self.last_affected = 0

    @property
    def name(self) -> str:
        return "lazy-greedy" if self.lazy else "greedy"

    @property
    def active_instances(self) -> int:
        return 0

    def step(self, graph: TdnGraph, batch: Sequence[Interaction], *, query: bool = True) -> Solution | None:
        self.last_affected = len(self.oracle.affected_nodes(graph, batch))
        if not query:
            return None
        run = lazy_greedy if self.lazy else greedy
        return run(graph, self.k, self.oracle)


class RandomTracker:
    """Uniform random seed sets, one seed stream per (seed, timestep)"""

    name = "random"

    def __init__(self, k: int, oracle: InfluenceOracle, *, seed: int = 0):
        self.k = k
        self.oracle = oracle
        self.seed = seed
        self.last_affected = 0

    @property
    def active_instances(self) -> int:
        return 0

    def step(self, graph: TdnGraph, batch: Sequence[Interaction], *, query: bool = True) -> Solution | None:
        self.last_affected = len(self.oracle.affected_nodes(graph, batch))
        if not query:
            return None
        nodes = random_k(graph, self.k, (self.seed, graph.now))
        if not nodes:
            return Solution.empty()
        return Solution(nodes, self.oracle.spread(graph, nodes, label=QUERY))


class BruteForceTracker:
    """Exact optimum by enumeration; only for small graphs"""

    name = "brute-force"

    def __init__(self, k: int, oracle: InfluenceOracle, *, limit: int | None = None):
        self.k = k
        self.oracle = oracle
        self.limit = limit
        self.last_affected = 0

    @property
    def active_instances(self) -> int:
        return 0

    def step(self, graph: TdnGraph, batch: Sequence[Interaction], *, query: bool = True) -> Solution | None:
        self.last_affected = len(self.oracle.affected_nodes(graph, batch))
        if not query:
            return None
        return brute_force_opt(graph, self.k, self.oracle, limit=self.limit)
