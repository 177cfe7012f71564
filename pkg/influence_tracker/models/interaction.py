"""
Stream elements: raw records and lifetime-annotated interactions
"""

from dataclasses import dataclass
from typing import NamedTuple

from influence_tracker.exceptions import InvalidInteractionError


class RawInteraction(NamedTuple):
    """A parsed <source, target, timestamp> record, lifetime column optional"""

    source: int
    target: int
    timestamp: int
    lifetime: int | None = None


@dataclass(frozen=True, slots=True)
class Interaction:
    """
    One timestamped influence event source -> target with its assigned lifetime.
    A lifetime of None means the interaction never expires.
    """

    source: int
    target: int
    arrival: int
    lifetime: int | None = None

    def __post_init__(self):
        if self.source == self.target:
            raise InvalidInteractionError(f"self-loop on node {self.source}", self)
        if self.lifetime is not None and self.lifetime < 1:
            raise InvalidInteractionError(f"non-positive lifetime {self.lifetime}", self)

    @property
    def infinite(self) -> bool:
        return self.lifetime is None

    @property
    def expires_at(self) -> int | None:
        """First timestep at which the interaction is no longer alive"""
        if self.lifetime is None:
            return None
        return self.arrival + self.lifetime

    def remaining_lifetime(self, now: int) -> int | None:
        """Remaining lifetime at timestep now, None when unbounded"""
        if self.lifetime is None:
            return None
        return self.lifetime - now + self.arrival

    def alive_at(self, now: int) -> bool:
        if now < self.arrival:
            return False
        return self.lifetime is None or now < self.arrival + self.lifetime


class Solution(NamedTuple):
    """A seed set together with its influence spread"""

    nodes: frozenset[int]
    value: int

    @classmethod
    def empty(cls) -> "Solution":
        return cls(frozenset(), 0)
