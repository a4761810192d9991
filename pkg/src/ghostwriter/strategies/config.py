"""Strategy selection and its open parameters."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BadConfig, UnknownStrategy

STRATEGY_NAMES = ("vanilla", "corrective", "self_reflective", "notebook", "graph")

DEFAULT_K = 5
DEFAULT_TAU = 0.5
DEFAULT_MAX_ITERATIONS = 3


@dataclass(frozen=True)
class StrategyConfig:
    strategy: str = "vanilla"
    k: int = DEFAULT_K
    tau: float = DEFAULT_TAU
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    rerank: bool = False

    def __post_init__(self):
        if self.strategy not in STRATEGY_NAMES:
            raise UnknownStrategy(self.strategy)
        if self.k < 0:
            raise BadConfig(f"k must be >= 0, got {self.k}")
        if not 0.0 <= self.tau <= 1.0:
            raise BadConfig(f"tau must be in [0, 1], got {self.tau}")
        if self.max_iterations < 1:
            raise BadConfig(f"max_iterations must be >= 1, got {self.max_iterations}")

    @classmethod
    def from_overrides(cls, strategy: str | None = None, **overrides) -> "StrategyConfig":
        fields = {"strategy": strategy or "vanilla"}
        for name in ("k", "tau", "max_iterations", "rerank"):
            if overrides.get(name) is not None:
                fields[name] = overrides[name]
        return cls(**fields)

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "k": self.k,
            "tau": self.tau,
            "max_iterations": self.max_iterations,
            "rerank": self.rerank,
        }
