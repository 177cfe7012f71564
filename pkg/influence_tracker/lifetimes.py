"""
Lifetime assignment for arriving interactions
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from influence_tracker.exceptions import ConfigurationError, InvalidInteractionError
from influence_tracker.models import Interaction, LifetimePolicy, RawInteraction

logger = logging.getLogger(__name__)


@dataclass
class AssignedBatch:
    """Interactions built from one timestep's records, plus the records rejected"""

    interactions: list[Interaction] = field(default_factory=list)
    rejected: list[InvalidInteractionError] = field(default_factory=list)


class LifetimeAssigner:
    """
    Annotates raw records with lifetimes according to a LifetimePolicy.
    Geometric draws come from one numpy Generator seeded by the policy, so the
    assignment is reproducible for a fixed seed and batch sequence.
    """

    def __init__(self, policy: LifetimePolicy):
        self.policy = policy
        self._rng = np.random.default_rng(policy.seed)

    def draw(self, size: int) -> list[int | None]:
        """Lifetimes for `size` interactions; column policy has nothing to draw"""
        policy = self.policy
        match policy.kind:
            case "infinite":
                return [None] * size
            case "constant":
                return [policy.window] * size
            case "geometric":
                return self._draw_geometric(size)
        raise ConfigurationError("the column lifetime policy reads lifetimes from the input")

    def _draw_geometric(self, size: int) -> list[int | None]:
        """
        Inverse-CDF draws of the geometric law truncated to 1..L: with
        mass = 1 - (1-p)^L, l = 1 + floor(log1p(-u * mass) / log1p(-p)).
        One uniform per lifetime, whatever p * L is.
        """
        p, bound = self.policy.p, self.policy.max_lifetime
        if p >= 1:
            return [1] * size
        uniform = self._rng.random(size)
        scale = math.log1p(-p)
        if bound is not None:
            uniform = uniform * -math.expm1(bound * scale)
        draws = 1 + np.floor(np.log1p(-uniform) / scale)
        if bound is not None:
            # float rounding can land one past the truncation point
            draws = np.clip(draws, 1, bound)
        return [int(value) for value in draws]

    def assign(self, batch: Sequence[RawInteraction], arrival: int | None = None) -> AssignedBatch:
        """
        Build Interactions for one timestep. Bad records (self-loops, non-positive or
        over-bound lifetimes) are collected in `rejected` rather than aborting the batch.
        """
        result = AssignedBatch()
        if not batch:
            return result
        timestep = batch[0].timestamp if arrival is None else arrival
        if any(record.timestamp != batch[0].timestamp for record in batch):
            raise ConfigurationError("a lifetime batch must share one arrival timestep")

        if self.policy.kind == "column":
            lifetimes = [record.lifetime for record in batch]
        else:
            lifetimes = self.draw(len(batch))

        bound = self.policy.max_lifetime
        for record, lifetime in zip(batch, lifetimes, strict=True):
            try:
                if self.policy.kind == "column" and lifetime is None:
                    raise InvalidInteractionError("missing lifetime column", record)
                if lifetime is not None and bound is not None and lifetime > bound:
                    raise InvalidInteractionError(
                        f"lifetime {lifetime} exceeds maximum lifetime {bound}", record
                    )
                result.interactions.append(
                    Interaction(record.source, record.target, timestep, lifetime)
                )
            except InvalidInteractionError as exc:
                exc.record = record
                result.rejected.append(exc)
        if result.rejected:
            logger.warning("t=%d: rejected %d of %d records", timestep, len(result.rejected), len(batch))
        return result


def assign_lifetimes(
    batch: Sequence[RawInteraction], policy: LifetimePolicy | LifetimeAssigner
) -> list[Interaction]:
    """
    Annotate one timestep's records with lifetimes. Raises on the first rejected
    record; use LifetimeAssigner.assign to collect rejections instead.
    """
    assigner = policy if isinstance(policy, LifetimeAssigner) else LifetimeAssigner(policy)
    assigned = assigner.assign(batch)
    if assigned.rejected:
        raise assigned.rejected[0]
    return assigned.interactions
