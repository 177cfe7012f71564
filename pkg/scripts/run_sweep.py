"""
Parameter sweep: run every algorithm over a grid of k, L, epsilon and the
geometric lifetime parameter p, and summarize value, oracle-call and throughput
ratios against a reference algorithm
"""

import csv
import itertools
import sys
from pathlib import Path

import click
from pydantic import ValidationError

# Add parent directory to path so we can import influence_tracker modules
sys.path.append(str(Path(__file__).parent.parent))

from influence_tracker.harness import run_experiment
from influence_tracker.models import ALGORITHMS, ExperimentConfig, SyntheticSpec

SWEEP_COLUMNS = (
    "algorithm",
    "k",
    "max_lifetime",
    "lifetime",
    "epsilon",
    "mean_value",
    "mean_oracle_calls",
    "total_oracle_calls",
    "throughput",
    "value_ratio",
    "calls_ratio",
    "speedup",
)


def _ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",")]


def _floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",")]


def _ratio(numerator: float | None, denominator: float | None) -> str:
    if numerator is None or not denominator:
        return ""
    return f"{numerator / denominator:.6f}"


def _policies(lifetime: str, p_values: str | None) -> list[str]:
    """One lifetime policy per p value, or the single --lifetime policy"""
    if not p_values:
        return [lifetime]
    return [f"geom:{p}" for p in _floats(p_values)]


@click.command()
@click.option("--synthetic", default="200,10,300,1.0", show_default=True, metavar="n,m,T[,bias[,audience]]")
@click.option("--input", "input_path", type=click.Path(path_type=Path, dir_okay=False), default=None)
@click.option("--lifetime", default="geom:0.05", show_default=True)
@click.option(
    "--p-values",
    "p_values",
    default=None,
    help="Comma separated geometric parameters p, e.g. 0.001,0.002,0.004,0.008. Overrides --lifetime.",
)
@click.option(
    "--algorithms",
    default="hist-approx,basic-reduction",
    show_default=True,
    help="Comma separated algorithms to sweep.",
)
@click.option("--reference", type=click.Choice(ALGORITHMS), default="greedy", show_default=True)
@click.option("--k-values", "k_values", default="5,10", show_default=True)
@click.option("--lifetimes", "max_lifetimes", default="20,50", show_default=True, help="Values of L.")
@click.option("--epsilons", default="0.1,0.2", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--outdir", type=click.Path(path_type=Path, file_okay=False), default=Path("sweep_output"))
def sweep(
    synthetic, input_path, lifetime, p_values, algorithms, reference, k_values, max_lifetimes, epsilons, seed, outdir
):
    """Run the sweep and write OUTDIR/sweep_summary.csv"""
    outdir.mkdir(parents=True, exist_ok=True)
    source = {"input_path": input_path} if input_path else {"synthetic": SyntheticSpec.parse(synthetic, seed=seed)}
    rows = []

    grid = itertools.product(_ints(k_values), _ints(max_lifetimes), _policies(lifetime, p_values))
    for k, max_lifetime, policy in grid:
        print(f"\n=== k={k}, L={max_lifetime}, lifetime={policy} ===")
        tag = f"k{k}_L{max_lifetime}_{policy.replace(':', '')}"
        base = {"k": k, "max_lifetime": max_lifetime, "lifetime": policy, "seed": seed, **source}
        reference_summary = run_experiment(
            ExperimentConfig(
                algorithm=reference,
                out_path=outdir / f"{reference}_{tag}.csv",
                record_wall_clock=False,
                **base,
            )
        )
        print(f"✓ {reference}: mean value {reference_summary.mean_value:.3f}")

        for algorithm, epsilon in itertools.product(algorithms.split(","), _floats(epsilons)):
            try:
                config = ExperimentConfig(
                    algorithm=algorithm,
                    epsilon=epsilon,
                    out_path=outdir / f"{algorithm}_{tag}_eps{epsilon}.csv",
                    record_wall_clock=False,
                    **base,
                )
            except ValidationError as exc:
                print(f"✗ skipping {algorithm}: {exc.errors()[0]['msg']}")
                continue
            summary = run_experiment(config)
            throughput = summary.throughput
            rows.append(
                {
                    "algorithm": algorithm,
                    "k": k,
                    "max_lifetime": max_lifetime,
                    "lifetime": policy,
                    "epsilon": epsilon,
                    "mean_value": f"{summary.mean_value:.6f}",
                    "mean_oracle_calls": f"{summary.mean_oracle_calls:.6f}",
                    "total_oracle_calls": summary.total_oracle_calls,
                    "throughput": "" if throughput is None else f"{throughput:.1f}",
                    "value_ratio": _ratio(summary.mean_value, reference_summary.mean_value),
                    "calls_ratio": _ratio(summary.mean_oracle_calls, reference_summary.mean_oracle_calls),
                    "speedup": _ratio(throughput, reference_summary.throughput),
                }
            )
            print(f"✓ {algorithm} eps={epsilon}: value ratio {rows[-1]['value_ratio']}, {rows[-1]['throughput']} edges/s")

    with (outdir / "sweep_summary.csv").open("w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"\n=== Sweep complete: {len(rows)} runs in {outdir} ===\n")


if __name__ == "__main__":
    sweep()
