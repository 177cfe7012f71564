"""
Models package - exports stream, policy and experiment types
"""

from .experiment import ALGORITHMS, AlgorithmName, ExperimentConfig, SyntheticSpec
from .interaction import Interaction, RawInteraction, Solution
from .lifetime import LifetimePolicy
from .metrics import METRICS_COLUMNS, ExperimentSummary, MetricsRecord

__all__ = [
    "ALGORITHMS",
    "METRICS_COLUMNS",
    "AlgorithmName",
    "ExperimentConfig",
    "ExperimentSummary",
    "Interaction",
    "LifetimePolicy",
    "MetricsRecord",
    "RawInteraction",
    "Solution",
    "SyntheticSpec",
]
