"""
Algorithms package - streaming trackers and reference baselines
"""

from collections.abc import Sequence
from typing import Protocol

from influence_tracker.graph import TdnGraph
from influence_tracker.models import ExperimentConfig, Interaction, Solution
from influence_tracker.oracle import InfluenceOracle

from .baselines import BruteForceTracker, GreedyTracker, RandomTracker, greedy, lazy_greedy, random_k
from .basic_reduction import BasicReduction
from .hist_approx import HistApprox, find_redundant
from .sieve_adn import SieveAdn, SieveInstance, SieveState, new_sieve


class Tracker(Protocol):
    """Surface the harness drives once per timestep"""

    name: str
    last_affected: int  # affected-node count of the last batch on G_t

    @property
    def active_instances(self) -> int: ...

    def step(
        self, graph: TdnGraph, batch: Sequence[Interaction], *, query: bool = True
    ) -> Solution | None: ...


def build_tracker(config: ExperimentConfig, oracle: InfluenceOracle) -> Tracker:
    """Instantiate the tracker named by config.algorithm"""
    match config.algorithm:
        case "sieve-adn":
            return SieveAdn(config.k, config.epsilon, oracle)
        case "basic-reduction":
            return BasicReduction(config.k, config.epsilon, config.max_lifetime, oracle)
        case "hist-approx" | "hist-approx-exact":
            return HistApprox(
                config.k,
                config.epsilon,
                oracle,
                max_lifetime=config.max_lifetime,
                refine=config.algorithm == "hist-approx-exact",
            )
        case "greedy" | "lazy-greedy":
            return GreedyTracker(config.k, oracle, lazy=config.algorithm == "lazy-greedy")
        case "random":
            return RandomTracker(config.k, oracle, seed=config.seed)
        case "brute-force":
            return BruteForceTracker(config.k, oracle)
    raise ValueError(f"unknown algorithm {config.algorithm!r}")


__all__ = [
    "BasicReduction",
    "BruteForceTracker",
    "GreedyTracker",
    "HistApprox",
    "RandomTracker",
    "SieveAdn",
    "SieveInstance",
    "SieveState",
    "Tracker",
    "build_tracker",
    "find_redundant",
    "greedy",
    "lazy_greedy",
    "new_sieve",
    "random_k",
]
