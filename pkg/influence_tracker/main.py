"""
TDN Influence Tracker - command line entry point
"""

import logging
from pathlib import Path

import click
from pydantic import ValidationError

from influence_tracker.config import settings
from influence_tracker.exceptions import TrackerError
from influence_tracker.harness import run_experiment
from influence_tracker.models import ALGORITHMS, ExperimentConfig, SyntheticSpec


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else settings.log_level
    logging.basicConfig(level=level, format=settings.log_format)


def _validation_message(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
        for error in exc.errors()
    )


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--algorithm", type=click.Choice(ALGORITHMS), default="hist-approx", show_default=True)
@click.option("--k", "k", type=int, default=10, show_default=True, help="Seed set budget.")
@click.option("--epsilon", type=float, default=0.1, show_default=True, help="Accuracy in (0, 1).")
@click.option(
    "--lifetime",
    default="infinite",
    show_default=True,
    help="Lifetime policy: infinite, const:W, geom:p or column.",
)
@click.option("--max-lifetime", "max_lifetime", type=int, default=None, help="Maximum lifetime L.")
@click.option(
    "--input",
    "input_path",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Stream file: source,target,timestamp[,lifetime] per line.",
)
@click.option("--synthetic", default=None, metavar="n,m,T[,bias[,audience]]", help="Generate a synthetic stream.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--query-every", "query_every", type=int, default=None, help="Query cadence in steps.")
@click.option("--steps", type=int, default=None, help="Stop after this many timesteps.")
@click.option(
    "--out",
    "out_path",
    type=click.Path(path_type=Path, dir_okay=False),
    default=Path("metrics.csv"),
    show_default=True,
)
@click.option("--strict", is_flag=True, help="Malformed lines and rejected records are fatal.")
@click.option("--single", is_flag=True, help="One interaction per timestep.")
@click.option("--no-wall-clock", "no_wall_clock", is_flag=True, help="Blank the wall-clock column.")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def main(
    algorithm: str,
    k: int,
    epsilon: float,
    lifetime: str,
    max_lifetime: int | None,
    input_path: Path | None,
    synthetic: str | None,
    seed: int,
    query_every: int | None,
    steps: int | None,
    out_path: Path,
    strict: bool,
    single: bool,
    no_wall_clock: bool,
    verbose: bool,
):
    """Track the k most influential nodes over a time-decaying interaction stream."""
    configure_logging(verbose)
    try:
        config = ExperimentConfig(
            algorithm=algorithm,
            k=k,
            epsilon=epsilon,
            lifetime=lifetime,
            max_lifetime=max_lifetime,
            query_every=query_every,
            steps=steps,
            seed=seed,
            input_path=input_path,
            synthetic=SyntheticSpec.parse(synthetic, seed=seed) if synthetic else None,
            out_path=out_path,
            strict=strict,
            single=single,
            record_wall_clock=not no_wall_clock,
        )
        summary = run_experiment(config)
    except ValidationError as exc:
        raise click.ClickException(_validation_message(exc)) from exc
    except (TrackerError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc

    click.echo(
        f"{summary.algorithm}: {summary.queries} queries, mean value {summary.mean_value:.3f}, "
        f"{summary.mean_oracle_calls:.1f} oracle calls per step ({summary.total_oracle_calls} total) -> {out_path}"
    )


if __name__ == "__main__":
    main()
