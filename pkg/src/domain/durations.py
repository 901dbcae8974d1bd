"""Duration distributions used for exploit development, detection and reconfiguration gaps."""

import math
from dataclasses import dataclass

import numpy as np

from domain.enums import DistributionKind
from domain.exceptions import ValidationError


@dataclass(frozen=True)
class DurationDistribution:
    kind: DistributionKind
    mean: float
    # Half-width of the uniform distribution around the mean.
    spread: float = 0.0

    def __post_init__(self) -> None:
        if self.mean < 0:
            raise ValidationError(f"Mean duration must be non-negative, got {self.mean}")
        if self.kind == DistributionKind.EXPONENTIAL and self.mean == 0:
            raise ValidationError("An exponential duration needs a positive mean")
        if self.kind == DistributionKind.UNIFORM and not 0 <= self.spread <= self.mean:
            raise ValidationError("Uniform spread must lie in [0, mean]")

    @classmethod
    def constant(cls, value: float) -> "DurationDistribution":
        return cls(DistributionKind.CONSTANT, value)

    @classmethod
    def exponential(cls, mean: float) -> "DurationDistribution":
        return cls(DistributionKind.EXPONENTIAL, mean)

    @classmethod
    def uniform(cls, mean: float, spread: float) -> "DurationDistribution":
        return cls(DistributionKind.UNIFORM, mean, spread)

    @property
    def is_constant(self) -> bool:
        return self.kind == DistributionKind.CONSTANT

    @property
    def minimum(self) -> float:
        if self.kind == DistributionKind.CONSTANT:
            return self.mean
        if self.kind == DistributionKind.UNIFORM:
            return self.mean - self.spread
        return 0.0

    @property
    def maximum(self) -> float:
        if self.kind == DistributionKind.CONSTANT:
            return self.mean
        if self.kind == DistributionKind.UNIFORM:
            return self.mean + self.spread
        return math.inf

    def sample(self, rng: np.random.Generator) -> float:
        if self.kind == DistributionKind.CONSTANT:
            return self.mean
        if self.kind == DistributionKind.EXPONENTIAL:
            return float(rng.exponential(self.mean))
        return float(rng.uniform(self.mean - self.spread, self.mean + self.spread))
