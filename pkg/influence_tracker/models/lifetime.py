"""
LifetimePolicy model - how lifetimes are attached to arriving interactions
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from influence_tracker.exceptions import ConfigurationError

LifetimeKind = Literal["infinite", "constant", "geometric", "column"]


class LifetimePolicy(BaseModel):
    """
    One of:
      - infinite: every edge lives forever (addition-only network)
      - constant: every edge lives `window` steps (sliding window)
      - geometric: lifetimes drawn with mass (1-p)^(l-1) p, truncated to 1..max_lifetime
      - column: lifetimes read from the input's fourth column
    """

    model_config = ConfigDict(frozen=True)

    kind: LifetimeKind = "infinite"
    window: int | None = None
    p: float | None = None
    max_lifetime: int | None = None
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def check_parameters(self):
        if self.max_lifetime is not None and self.max_lifetime < 1:
            raise ValueError(f"maximum lifetime must be >= 1, got {self.max_lifetime}")
        if self.kind == "constant":
            if self.window is None or self.window < 1:
                raise ValueError(f"constant lifetime needs W >= 1, got {self.window}")
            if self.max_lifetime is not None and self.window > self.max_lifetime:
                raise ValueError(
                    f"constant lifetime {self.window} exceeds maximum lifetime {self.max_lifetime}"
                )
        if self.kind == "geometric" and (self.p is None or not 0 < self.p <= 1):
            raise ValueError(f"geometric lifetime needs 0 < p <= 1, got {self.p}")
        return self

    @property
    def spec(self) -> str:
        """Text form accepted by parse()"""
        match self.kind:
            case "constant":
                return f"const:{self.window}"
            case "geometric":
                return f"geom:{self.p!r}"
            case _:
                return self.kind

    @classmethod
    def parse(cls, text: str, *, max_lifetime: int | None = None, seed: int = 0) -> "LifetimePolicy":
        """Build a policy from 'infinite', 'const:W', 'geom:p' or 'column'"""
        head, _, arg = text.strip().partition(":")
        try:
            match head:
                case "infinite" | "inf":
                    return cls(kind="infinite", max_lifetime=max_lifetime, seed=seed)
                case "const" | "constant":
                    return cls(kind="constant", window=int(arg), max_lifetime=max_lifetime, seed=seed)
                case "geom" | "geometric":
                    return cls(kind="geometric", p=float(arg), max_lifetime=max_lifetime, seed=seed)
                case "column":
                    return cls(kind="column", max_lifetime=max_lifetime, seed=seed)
        except ValueError as exc:
            raise ConfigurationError(f"invalid lifetime policy {text!r}: {exc}") from exc
        raise ConfigurationError(f"unknown lifetime policy {text!r}")
