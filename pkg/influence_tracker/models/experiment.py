"""
ExperimentConfig model - one benchmark run
"""

from pathlib import Path
from typing import Literal, get_args

from pydantic import BaseModel, ConfigDict, Field, model_validator

from influence_tracker.models.lifetime import LifetimePolicy

AlgorithmName = Literal[
    "sieve-adn",
    "basic-reduction",
    "hist-approx",
    "hist-approx-exact",
    "greedy",
    "lazy-greedy",
    "random",
    "brute-force",
]

ALGORITHMS: tuple[str, ...] = get_args(AlgorithmName)


class SyntheticSpec(BaseModel):
    """
    Synthetic stream: n nodes, m interactions per step, T steps, source bias and
    audience size. audience=0 draws targets uniformly over all other nodes.
    """

    model_config = ConfigDict(frozen=True)

    nodes: int = Field(ge=2)
    edges_per_step: int = Field(ge=1)
    steps: int = Field(ge=1)
    bias: float = Field(default=1.0, ge=0)
    audience: int = Field(default=9, ge=0)
    seed: int = Field(default=0, ge=0)

    @property
    def spec(self) -> str:
        return f"{self.nodes},{self.edges_per_step},{self.steps},{self.bias!r},{self.audience}"

    @classmethod
    def parse(cls, text: str, *, seed: int = 0) -> "SyntheticSpec":
        """Build a spec from 'n,m,T[,bias[,audience]]'"""
        parts = [part.strip() for part in text.split(",")]
        if not 3 <= len(parts) <= 5:
            raise ValueError(f"synthetic spec must be n,m,T[,bias[,audience]], got {text!r}")
        optional = {}
        if len(parts) >= 4:
            optional["bias"] = float(parts[3])
        if len(parts) == 5:
            optional["audience"] = int(parts[4])
        return cls(
            nodes=int(parts[0]),
            edges_per_step=int(parts[1]),
            steps=int(parts[2]),
            seed=seed,
            **optional,
        )


class ExperimentConfig(BaseModel):
    """Parameters of a single run_experiment invocation"""

    model_config = ConfigDict(frozen=True)

    algorithm: AlgorithmName = "hist-approx"
    k: int = Field(default=10, ge=1)
    epsilon: float = Field(default=0.1, gt=0, lt=1)
    lifetime: str = "infinite"
    max_lifetime: int | None = Field(default=None, ge=1)
    query_every: int | None = Field(default=None, ge=1)
    steps: int | None = Field(default=None, ge=0)
    seed: int = Field(default=0, ge=0)
    input_path: Path | None = None
    synthetic: SyntheticSpec | None = None
    out_path: Path = Path("metrics.csv")
    strict: bool = False
    single: bool = False
    record_wall_clock: bool = True

    @model_validator(mode="after")
    def check_combination(self):
        if (self.input_path is None) == (self.synthetic is None):
            raise ValueError("exactly one of an input path or a synthetic spec is required")
        policy = self.lifetime_policy
        if self.input_path is None and policy.kind == "column":
            raise ValueError("the column lifetime policy needs an input file")
        if self.algorithm == "sieve-adn" and policy.kind != "infinite":
            raise ValueError(
                "sieve-adn requires infinite lifetimes (an addition-only network); "
                "use basic-reduction or hist-approx for decaying streams"
            )
        if self.algorithm in ("basic-reduction", "hist-approx", "hist-approx-exact"):
            if policy.kind == "infinite":
                raise ValueError(f"{self.algorithm} needs finite lifetimes")
            if self.algorithm == "basic-reduction" and self.max_lifetime is None:
                raise ValueError("basic-reduction needs a finite --max-lifetime L")
        return self

    @property
    def lifetime_policy(self) -> LifetimePolicy:
        return LifetimePolicy.parse(self.lifetime, max_lifetime=self.max_lifetime, seed=self.seed)
