"""
Generate a synthetic interaction stream and save it in the input text format
"""

import sys
from pathlib import Path

import click

# Add parent directory to path so we can import influence_tracker modules
sys.path.append(str(Path(__file__).parent.parent))

from influence_tracker.lifetimes import LifetimeAssigner
from influence_tracker.models import LifetimePolicy, RawInteraction, SyntheticSpec
from influence_tracker.streams import generate_synthetic, serialize_single, write_stream


def with_lifetime_column(batches, policy: LifetimePolicy):
    """Attach drawn lifetimes as a fourth column so runs can use --lifetime column"""
    assigner = LifetimeAssigner(policy)
    for batch in batches:
        lifetimes = assigner.draw(len(batch))
        yield [
            RawInteraction(record.source, record.target, record.timestamp, lifetime)
            for record, lifetime in zip(batch, lifetimes, strict=True)
        ]


@click.command()
@click.argument("spec", metavar="n,m,T[,bias[,audience]]")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--single", is_flag=True, help="One interaction per timestep.")
@click.option("--lifetime", default=None, help="Also write a lifetime column: const:W or geom:p.")
@click.option("--max-lifetime", "max_lifetime", type=int, default=None)
@click.option("--out", "out_path", type=click.Path(path_type=Path, dir_okay=False), required=True)
def generate(spec, seed, single, lifetime, max_lifetime, out_path):
    """Write a synthetic stream to OUT"""
    batches = generate_synthetic(SyntheticSpec.parse(spec, seed=seed))
    if single:
        batches = serialize_single(batches)
    if lifetime is not None:
        policy = LifetimePolicy.parse(lifetime, max_lifetime=max_lifetime, seed=seed)
        batches = with_lifetime_column(batches, policy)
    count = write_stream(batches, out_path)
    print(f"✓ Wrote {count} interactions to {out_path}")


if __name__ == "__main__":
    generate()
