"""
Interaction streams: text-file ingestion, synthetic generation and serialization

Input format: one interaction per line, comma or whitespace delimited,
source,target,timestamp[,lifetime]; blank lines and lines starting with '#' are
ignored. Raw timestamps are compressed to consecutive batch indices 0, 1, 2, ...
"""

import csv
import logging
from collections.abc import Iterable, Iterator
from itertools import groupby
from pathlib import Path

import numpy as np

from influence_tracker.exceptions import EmptyStreamError, StreamFormatError
from influence_tracker.models import RawInteraction, SyntheticSpec

logger = logging.getLogger(__name__)

Batch = list[RawInteraction]


def parse_line(line: str, line_number: int) -> RawInteraction | None:
    """One record, or None for comments and blank lines"""
    text = line.strip()
    if not text or text.startswith("#"):
        return None
    fields = text.split(",") if "," in text else text.split()
    if len(fields) not in (3, 4):
        raise StreamFormatError(f"expected 3 or 4 fields, got {len(fields)}", line_number)
    try:
        values = [int(field.strip()) for field in fields]
    except ValueError as exc:
        raise StreamFormatError(f"non-integer field in {text!r}", line_number) from exc
    return RawInteraction(*values)


def parse_stream(path: Path | str, *, strict: bool = False) -> Iterator[Batch]:
    """
    Read a stream file into batches grouped by timestamp. Malformed lines are skipped
    with a warning, or fatal when strict; strict mode also rejects timestamps that
    go backwards.
    """
    path = Path(path)
    try:
        handle = path.open(encoding="utf-8")
    except OSError as exc:
        raise StreamFormatError(f"cannot read {path}: {exc}") from exc

    records: list[RawInteraction] = []
    skipped = 0
    with handle:
        for line_number, line in enumerate(handle, start=1):
            try:
                record = parse_line(line, line_number)
            except StreamFormatError:
                if strict:
                    raise
                logger.warning("%s:%d: skipping malformed line %r", path, line_number, line.rstrip())
                skipped += 1
                continue
            if record is None:
                continue
            if strict and records and record.timestamp < records[-1].timestamp:
                raise StreamFormatError(
                    f"timestamp {record.timestamp} precedes {records[-1].timestamp}", line_number
                )
            records.append(record)

    if not records:
        raise EmptyStreamError(f"{path} contains no interactions")
    logger.info("read %d interactions from %s (%d lines skipped)", len(records), path, skipped)
    return compress_timestamps(records)


def compress_timestamps(records: Iterable[RawInteraction]) -> Iterator[Batch]:
    """Map sorted unique timestamps to 0, 1, 2, ... keeping input order within a timestamp"""
    ordered = sorted(records, key=lambda record: record.timestamp)
    batches = [
        [record._replace(timestamp=index) for record in group]
        for index, (_, group) in enumerate(groupby(ordered, key=lambda record: record.timestamp))
    ]
    return iter(batches)


def generate_synthetic(spec: SyntheticSpec) -> Iterator[Batch]:
    """
    spec.steps batches of spec.edges_per_step interactions over nodes 0..n-1.
    Sources follow a Polya urn: a node's weight is 1 + bias * (times it was a source),
    which skews influence the way real interaction logs are skewed.

    With spec.audience = a > 0 the network is a two-level broadcast network: the
    first n // (a + 1) nodes are broadcasters, every other node follows exactly one
    of them (round robin), and each interaction goes from a broadcaster to one of
    its own followers. With a = 0 targets are uniform over the other n - 1 nodes.
    Neither mode emits self-loops.
    """
    rng = np.random.default_rng(spec.seed)
    n, m = spec.nodes, spec.edges_per_step
    broadcasters = max(1, n // (spec.audience + 1)) if spec.audience else n
    activity = np.zeros(broadcasters)
    for step in range(spec.steps):
        weights = 1.0 + spec.bias * activity
        sources = rng.choice(broadcasters, size=m, p=weights / weights.sum())
        if spec.audience:
            followers = (n - 1 - broadcasters - sources) // broadcasters + 1
            targets = broadcasters + sources + rng.integers(0, followers) * broadcasters
        else:
            targets = (sources + rng.integers(1, n, size=m)) % n
        np.add.at(activity, sources, 1)
        yield [
            RawInteraction(int(source), int(target), step)
            for source, target in zip(sources, targets, strict=True)
        ]


def serialize_single(batches: Iterable[Batch]) -> Iterator[Batch]:
    """One interaction per timestep, in stream order"""
    step = 0
    for batch in batches:
        for record in batch:
            yield [record._replace(timestamp=step)]
            step += 1


def write_stream(batches: Iterable[Batch], path: Path | str) -> int:
    """Write batches in the parse_stream format; returns the number of lines"""
    count = 0
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for batch in batches:
            for record in batch:
                fields = [record.source, record.target, record.timestamp]
                if record.lifetime is not None:
                    fields.append(record.lifetime)
                writer.writerow(fields)
                count += 1
    return count
