"""
Metrics file sink: a flat delimiter-separated file with a fixed header
"""

import csv
from collections.abc import Generator
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

from influence_tracker.config import settings
from influence_tracker.models import METRICS_COLUMNS, ExperimentSummary, MetricsRecord


class MetricsWriter:
    """
    Appends MetricsRecords and keeps the running time averages. Oracle counters
    arrive cumulative; the summary averages their per-query deltas over the
    timesteps each delta covers (timesteps count from 0).
    """

    def __init__(self, handle: TextIO, *, algorithm: str, wall_clock: bool = True):
        self._writer = csv.writer(handle, delimiter=settings.metrics_delimiter, lineterminator="\n")
        self._wall_clock = wall_clock
        self._value_total = 0
        self._instances_total = 0
        self._affected_total = 0
        self._last_counts = (0, 0, 0)
        self._delta_totals = [0, 0, 0]
        self.summary = ExperimentSummary(algorithm=algorithm)
        self._writer.writerow(METRICS_COLUMNS)

    def write(self, record: MetricsRecord) -> None:
        self._writer.writerow(record.to_row(wall_clock=self._wall_clock))
        counts = (record.oracle_calls, record.update_calls, record.query_calls)
        for position, (current, previous) in enumerate(zip(counts, self._last_counts, strict=True)):
            self._delta_totals[position] += current - previous
        self._last_counts = counts

        self._value_total += record.value
        self._instances_total += record.active_instances
        self._affected_total += record.affected
        queries = self.summary.queries + 1
        steps = record.timestep + 1
        calls, update, query = self._delta_totals
        self.summary = self.summary.model_copy(
            update={
                "queries": queries,
                "steps": steps,
                "mean_value": self._value_total / queries,
                "mean_oracle_calls": calls / steps,
                "mean_update_calls": update / steps,
                "mean_query_calls": query / steps,
                "mean_active_instances": self._instances_total / queries,
                "mean_affected": self._affected_total / queries,
                "total_oracle_calls": record.oracle_calls,
                "update_calls": record.update_calls,
                "query_calls": record.query_calls,
            }
        )

    def record_throughput(self, *, edges: int, seconds: float) -> None:
        """Arrivals processed over the whole run and the tracker time they took"""
        self.summary = self.summary.model_copy(update={"edges": edges, "wall_seconds": seconds})

    def close(self) -> None:
        if self.summary.queries:
            self._writer.writerow(self.summary.to_row(wall_clock=self._wall_clock))


@contextmanager
def open_metrics(path: Path | str, *, algorithm: str, wall_clock: bool = True) -> Generator[MetricsWriter]:
    """
    Metrics writer bound to a file. The summary row is written on clean exit only,
    so a failed run leaves no misleading averages.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = MetricsWriter(handle, algorithm=algorithm, wall_clock=wall_clock)
        yield writer
        writer.close()


def read_metrics(path: Path | str) -> list[dict[str, str]]:
    """Rows of a metrics file as dicts keyed by column"""
    with Path(path).open(encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle, delimiter=settings.metrics_delimiter))
