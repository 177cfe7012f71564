"""
MetricsRecord model - one row of experiment output
"""

from pydantic import BaseModel, Field

METRICS_COLUMNS: tuple[str, ...] = (
    "timestep",
    "algorithm",
    "solution",
    "value",
    "oracle_calls",
    "update_calls",
    "query_calls",
    "alive_edges",
    "alive_nodes",
    "active_instances",
    "affected",
    "wall_micros",
    "edges_per_second",
)


class MetricsRecord(BaseModel):
    """Per-query measurements; oracle counters are cumulative"""

    timestep: int
    algorithm: str
    solution: list[int] = Field(default_factory=list)
    value: int = 0
    oracle_calls: int = 0
    update_calls: int = 0
    query_calls: int = 0
    alive_edges: int = 0
    alive_nodes: int = 0
    active_instances: int = 0
    affected: int = 0
    wall_micros: int = 0
    edges_per_second: float = 0.0

    def to_row(self, *, wall_clock: bool = True) -> list[str]:
        row = self.model_dump()
        row["solution"] = " ".join(str(node) for node in self.solution)
        row["edges_per_second"] = f"{self.edges_per_second:.1f}"
        if not wall_clock:
            row["wall_micros"] = ""
            row["edges_per_second"] = ""
        return [str(row[column]) for column in METRICS_COLUMNS]


class ExperimentSummary(BaseModel):
    """
    Time averages over a run. Oracle figures are mean calls per timestep, taken
    from the per-query deltas of the cumulative counters; throughput is arrivals
    processed per second of tracker time.
    """

    algorithm: str
    queries: int = 0
    steps: int = 0
    mean_value: float = 0.0
    mean_oracle_calls: float = 0.0
    mean_update_calls: float = 0.0
    mean_query_calls: float = 0.0
    mean_active_instances: float = 0.0
    mean_affected: float = 0.0
    total_oracle_calls: int = 0
    update_calls: int = 0
    query_calls: int = 0
    edges: int = 0
    wall_seconds: float = 0.0

    @property
    def throughput(self) -> float | None:
        """Edges per second, None when no time was measured"""
        if self.wall_seconds <= 0:
            return None
        return self.edges / self.wall_seconds

    def to_row(self, *, wall_clock: bool = True) -> list[str]:
        row = dict.fromkeys(METRICS_COLUMNS, "")
        row["timestep"] = "summary"
        row["algorithm"] = self.algorithm
        row["value"] = f"{self.mean_value:.6f}"
        row["oracle_calls"] = f"{self.mean_oracle_calls:.6f}"
        row["update_calls"] = f"{self.mean_update_calls:.6f}"
        row["query_calls"] = f"{self.mean_query_calls:.6f}"
        row["active_instances"] = f"{self.mean_active_instances:.6f}"
        row["affected"] = f"{self.mean_affected:.6f}"
        if wall_clock and self.steps:
            row["wall_micros"] = f"{self.wall_seconds * 1e6 / self.steps:.1f}"
        if wall_clock and self.throughput is not None:
            row["edges_per_second"] = f"{self.throughput:.1f}"
        return [row[column] for column in METRICS_COLUMNS]
