"""
Time-decaying dynamic interaction network

TdnGraph holds the alive multi-edges at the current timestep. Edges are indexed by
source (forward traversal), by target (reverse traversal) and by expiry timestep,
so advancing the clock only touches the bucket that expires.
"""

import logging
from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Protocol

from influence_tracker.exceptions import ChronologyError
from influence_tracker.models import Interaction

logger = logging.getLogger(__name__)


class Digraph(Protocol):
    """Read-only surface the influence oracle traverses"""

    def __contains__(self, node: object) -> bool: ...

    def successors(self, node: int) -> Iterable[int]: ...

    def predecessors(self, node: int) -> Iterable[int]: ...

    @property
    def nodes(self) -> Iterable[int]: ...


@dataclass(frozen=True)
class ExpiryReport:
    """What one clock tick removed"""

    expired: tuple[Interaction, ...] = ()
    removed_nodes: frozenset[int] = frozenset()

    def __bool__(self) -> bool:
        return bool(self.expired)


class _Adjacency:
    """Multigraph adjacency with edge multiplicities and per-node degree"""

    __slots__ = ("degree", "inbound", "outbound")

    def __init__(self):
        self.outbound: defaultdict[int, Counter[int]] = defaultdict(Counter)
        self.inbound: defaultdict[int, Counter[int]] = defaultdict(Counter)
        self.degree: Counter[int] = Counter()

    def add(self, source: int, target: int) -> None:
        self.outbound[source][target] += 1
        self.inbound[target][source] += 1
        self.degree[source] += 1
        self.degree[target] += 1

    def has_pair(self, source: int, target: int) -> bool:
        targets = self.outbound.get(source)
        return bool(targets) and target in targets

    def remove(self, source: int, target: int) -> list[int]:
        """Drop one copy of source->target and return nodes left without edges"""
        _decrement(self.outbound, source, target)
        _decrement(self.inbound, target, source)
        orphans = []
        for node in (source, target):
            self.degree[node] -= 1
            if self.degree[node] == 0:
                del self.degree[node]
                orphans.append(node)
        return orphans

    def copy(self) -> "_Adjacency":
        clone = _Adjacency()
        for node, targets in self.outbound.items():
            clone.outbound[node] = targets.copy()
        for node, sources in self.inbound.items():
            clone.inbound[node] = sources.copy()
        clone.degree = self.degree.copy()
        return clone


def _decrement(index: defaultdict[int, Counter[int]], key: int, other: int) -> None:
    neighbours = index[key]
    neighbours[other] -= 1
    if neighbours[other] == 0:
        del neighbours[other]
        if not neighbours:
            del index[key]


class TdnGraph:
    """
    The network G_t = (V_t, E_t) at the current timestep.

    An interaction e is alive iff e.arrival <= now < e.arrival + e.lifetime.
    Callers serialize insert_batch/advance_time; reads may run between mutations.
    """

    def __init__(self, start: int = 0):
        self.now = start
        self._adjacency = _Adjacency()
        # expiry timestep -> [(sequence number, interaction)], in insertion order
        self._calendar: defaultdict[int, list[tuple[int, Interaction]]] = defaultdict(list)
        self._unbounded: list[tuple[int, Interaction]] = []
        self._sequence = 0
        self._edge_count = 0

    def __contains__(self, node: object) -> bool:
        return node in self._adjacency.degree

    def __repr__(self):
        return f"<TdnGraph(now={self.now}, nodes={self.num_nodes}, edges={self.num_edges})>"

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self._adjacency.degree)

    @property
    def num_nodes(self) -> int:
        return len(self._adjacency.degree)

    @property
    def num_edges(self) -> int:
        return self._edge_count

    def successors(self, node: int) -> Iterable[int]:
        targets = self._adjacency.outbound.get(node)
        return targets.keys() if targets else ()

    def predecessors(self, node: int) -> Iterable[int]:
        sources = self._adjacency.inbound.get(node)
        return sources.keys() if sources else ()

    def insert_batch(self, batch: Sequence[Interaction]) -> None:
        """Add this timestep's arrivals; the whole batch is rejected if any arrival != now"""
        for interaction in batch:
            if interaction.arrival != self.now:
                raise ChronologyError(
                    f"interaction arriving at {interaction.arrival} inserted at timestep {self.now}"
                )
        for interaction in batch:
            entry = (self._sequence, interaction)
            self._sequence += 1
            if interaction.expires_at is None:
                self._unbounded.append(entry)
            else:
                self._calendar[interaction.expires_at].append(entry)
            self._adjacency.add(interaction.source, interaction.target)
            self._edge_count += 1

    def new_pairs(self, batch: Sequence[Interaction]) -> list[Interaction]:
        """
        The first copy of each source->target pair in batch that G_t did not hold
        before the batch. Call right after insert_batch(batch).
        """
        copies = Counter((interaction.source, interaction.target) for interaction in batch)
        fresh = []
        for interaction in batch:
            pair = (interaction.source, interaction.target)
            targets = self._adjacency.outbound.get(interaction.source)
            if copies[pair] and targets is not None and targets[interaction.target] == copies[pair]:
                fresh.append(interaction)
            # later copies of the same pair are never fresh
            copies[pair] = 0
        return fresh

    def advance_time(self) -> ExpiryReport:
        """Move the clock one step and drop exactly the edges expiring at the new timestep"""
        self.now += 1
        bucket = self._calendar.pop(self.now, None)
        if not bucket:
            return ExpiryReport()

        removed_nodes: list[int] = []
        for _, interaction in bucket:
            removed_nodes.extend(self._adjacency.remove(interaction.source, interaction.target))
        self._edge_count -= len(bucket)
        logger.debug("t=%d: %d edges expired, %d nodes removed", self.now, len(bucket), len(removed_nodes))
        return ExpiryReport(
            expired=tuple(interaction for _, interaction in bucket),
            removed_nodes=frozenset(removed_nodes),
        )

    def alive_edges(self) -> list[Interaction]:
        """Every alive edge ordered by arrival, ties by input order"""
        return self.edges_with_remaining_lifetime_in(1, None)

    def edges_with_remaining_lifetime_in(self, low: int, high: int | None) -> list[Interaction]:
        """
        Alive edges whose remaining lifetime lies in [low, high), ordered by arrival
        (ties by input order). high=None means unbounded and includes infinite edges.
        """
        if low < 1 or (high is not None and high <= low):
            raise ValueError(f"invalid remaining-lifetime range [{low}, {high})")

        entries: list[tuple[int, Interaction]] = []
        first, stop = self.now + low, None if high is None else self.now + high
        if stop is not None and stop - first <= len(self._calendar):
            for expiry in range(first, stop):
                entries.extend(self._calendar.get(expiry, ()))
        else:
            for expiry, bucket in self._calendar.items():
                if expiry >= first and (stop is None or expiry < stop):
                    entries.extend(bucket)
        if high is None:
            entries.extend(self._unbounded)
        # sequence numbers grow with arrival, so they order by arrival then input order
        entries.sort(key=lambda entry: entry[0])
        return [interaction for _, interaction in entries]


class AdditiveView:
    """
    Addition-only multigraph of the edges one sieve instance has processed.
    Its node set is exactly the endpoints of those edges.
    """

    def __init__(self):
        self._adjacency = _Adjacency()
        self.edges: list[Interaction] = []

    def __contains__(self, node: object) -> bool:
        return node in self._adjacency.degree

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Interaction]:
        return iter(self.edges)

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self._adjacency.degree)

    def successors(self, node: int) -> Iterable[int]:
        targets = self._adjacency.outbound.get(node)
        return targets.keys() if targets else ()

    def predecessors(self, node: int) -> Iterable[int]:
        sources = self._adjacency.inbound.get(node)
        return sources.keys() if sources else ()

    def add_edges(self, edges: Iterable[Interaction]) -> list[Interaction]:
        """Append edges; returns the first copy of each source->target pair new to the view"""
        fresh = []
        for interaction in edges:
            if not self._adjacency.has_pair(interaction.source, interaction.target):
                fresh.append(interaction)
            self._adjacency.add(interaction.source, interaction.target)
            self.edges.append(interaction)
        return fresh

    def copy(self) -> "AdditiveView":
        clone = AdditiveView()
        clone._adjacency = self._adjacency.copy()
        clone.edges = list(self.edges)
        return clone


def build_view(edges: Iterable[Interaction]) -> AdditiveView:
    """Addition-only view over a fixed edge collection"""
    view = AdditiveView()
    view.add_edges(edges)
    return view
