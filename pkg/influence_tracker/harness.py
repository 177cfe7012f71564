"""
Experiment driver: one stream, one algorithm, one metrics file
"""

import logging
import time
from collections.abc import Iterator

from influence_tracker.algorithms import Tracker, build_tracker
from influence_tracker.config import settings
from influence_tracker.graph import TdnGraph
from influence_tracker.lifetimes import LifetimeAssigner
from influence_tracker.metrics import open_metrics
from influence_tracker.models import ExperimentConfig, ExperimentSummary, MetricsRecord
from influence_tracker.oracle import InfluenceOracle
from influence_tracker.streams import Batch, generate_synthetic, parse_stream, serialize_single

logger = logging.getLogger(__name__)


def load_batches(config: ExperimentConfig) -> list[Batch]:
    """The raw batches the run will process, truncated to config.steps"""
    if config.input_path is not None:
        batches: Iterator[Batch] = parse_stream(config.input_path, strict=config.strict)
    else:
        batches = generate_synthetic(config.synthetic)
    if config.single:
        batches = serialize_single(batches)
    loaded = []
    for batch in batches:
        if config.steps is not None and len(loaded) >= config.steps:
            break
        loaded.append(batch)
    return loaded


def query_cadence(config: ExperimentConfig, total_steps: int) -> int:
    """Every step for short runs, every sparse_query_every steps beyond dense_query_limit"""
    if config.query_every is not None:
        return config.query_every
    if total_steps <= settings.dense_query_limit:
        return 1
    return settings.sparse_query_every


def run_experiment(
    config: ExperimentConfig, *, oracle: InfluenceOracle | None = None
) -> ExperimentSummary:
    """
    Drive config.algorithm over the configured stream and write its metrics file.
    Per timestep: assign lifetimes, insert the batch, step the tracker, record a
    MetricsRecord at the query cadence, advance the clock.
    """
    oracle = oracle or InfluenceOracle()
    tracker: Tracker = build_tracker(config, oracle)
    assigner = LifetimeAssigner(config.lifetime_policy)
    batches = load_batches(config)
    every = query_cadence(config, len(batches))
    graph = TdnGraph()
    processed_edges = 0
    busy_ns = 0

    logger.info(
        "running %s (k=%d, epsilon=%s, lifetime=%s) over %d steps, querying every %d",
        tracker.name,
        config.k,
        config.epsilon,
        config.lifetime_policy.spec,
        len(batches),
        every,
    )
    with open_metrics(config.out_path, algorithm=tracker.name, wall_clock=config.record_wall_clock) as sink:
        for raw in batches:
            now = graph.now
            assigned = assigner.assign(raw, arrival=now)
            if assigned.rejected and config.strict:
                raise assigned.rejected[0]
            batch = assigned.interactions
            graph.insert_batch(batch)

            query = now % every == 0
            started = time.perf_counter_ns()
            solution = tracker.step(graph, batch, query=query)
            elapsed_ns = time.perf_counter_ns() - started
            processed_edges += len(batch)
            busy_ns += elapsed_ns

            if solution is not None:
                counter = oracle.counter
                sink.write(
                    MetricsRecord(
                        timestep=now,
                        algorithm=tracker.name,
                        solution=sorted(solution.nodes),
                        value=solution.value,
                        oracle_calls=counter.calls,
                        update_calls=counter.update_calls,
                        query_calls=counter.query_calls,
                        alive_edges=graph.num_edges,
                        alive_nodes=graph.num_nodes,
                        active_instances=tracker.active_instances,
                        affected=tracker.last_affected,
                        wall_micros=elapsed_ns // 1000,
                        edges_per_second=len(batch) * 1e9 / elapsed_ns if elapsed_ns else 0.0,
                    )
                )
            logger.debug("t=%d: %d instances, %d alive edges", now, tracker.active_instances, graph.num_edges)
            graph.advance_time()
        sink.record_throughput(edges=processed_edges, seconds=busy_ns / 1e9)

    summary = sink.summary
    logger.info(
        "%s finished: %d queries, mean value %.3f, %.1f oracle calls per step "
        "(%d in total, %d update, %d query), %s edges/s",
        summary.algorithm,
        summary.queries,
        summary.mean_value,
        summary.mean_oracle_calls,
        summary.total_oracle_calls,
        summary.update_calls,
        summary.query_calls,
        "n/a" if summary.throughput is None else f"{summary.throughput:.0f}",
    )
    return summary
