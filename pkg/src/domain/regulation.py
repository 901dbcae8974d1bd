"""Channel rates and the Law of Requisite Variety.

Regulator capacity is taken to be the regulator's capacity as a channel: a
ChannelRate carries log2(states) bits per signal, so its rate in bits per time
unit is the most variety it can remove from the outcome per time unit.
"""

import logging
import math
import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

from domain.enums import TimeUnit
from domain.exceptions import DomainError, UnitMismatchError, ValidationError
from domain.variety_calculus import Distribution, entropy_bits, log2_exact

log = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-9
UNBOUNDED = math.inf

_RATE_PATTERN = re.compile(r"^\s*([-+]?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)\s*/\s*([A-Za-z]+)\s*$")


@dataclass(frozen=True)
class Rate:
    """A quantity of bits per one time unit, e.g. ``2/hour``."""

    value: float
    unit: TimeUnit

    @classmethod
    def parse(cls, text: str) -> "Rate":
        match = _RATE_PATTERN.match(text)
        if match is None:
            raise ValidationError(f"Rate '{text}' must look like '<number>/<unit>'")
        return cls(float(match.group(1)), TimeUnit.parse(match.group(2)))


@dataclass(frozen=True)
class ChannelRate:
    label: str
    states_per_signal: int
    signals_per_period: float
    period: float
    unit: TimeUnit

    def __post_init__(self) -> None:
        if self.states_per_signal < 1:
            raise DomainError(f"Channel '{self.label}' needs at least one state per signal")
        if self.signals_per_period <= 0:
            raise ValidationError(f"Channel '{self.label}' must carry a positive number of signals")
        if self.period <= 0:
            raise ValidationError(f"Channel '{self.label}' must have a positive period")

    @classmethod
    def from_bit_rate(cls, label: str, bits: int, period: float, unit: TimeUnit) -> "ChannelRate":
        """A channel moving ``bits`` binary signals per ``period``."""
        return cls(label, 2, bits, period, unit)

    @property
    def bits_per_unit(self) -> float:
        return channel_rate_bits(self)


@dataclass(frozen=True)
class RegulationScenario:
    time_unit: TimeUnit
    disturbances: tuple[ChannelRate, ...] = ()
    regulators: tuple[ChannelRate, ...] = ()


@dataclass(frozen=True)
class RegulationVerdict:
    total_disturbance: float
    total_regulation: float
    unit: TimeUnit
    outcome_floor: float = field(init=False)
    controllable: bool = field(init=False)
    deficit_ratio: Optional[float] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcome_floor", requisite_variety_floor(self.total_disturbance, self.total_regulation))
        object.__setattr__(self, "controllable", self.total_regulation >= self.total_disturbance)
        ratio = self.total_disturbance / self.total_regulation if self.total_regulation > 0 else None
        object.__setattr__(self, "deficit_ratio", ratio)


def channel_rate_bits(ch: ChannelRate) -> float:
    """log2(states_per_signal) * signals_per_period / period, in bits per time unit."""
    if ch.states_per_signal < 1:
        raise DomainError(f"Channel '{ch.label}' needs at least one state per signal")
    return log2_exact(ch.states_per_signal) * ch.signals_per_period / ch.period


def channel_entropy_rate(dist: Distribution, signals_per_period: float, period: float) -> float:
    """Entropy-weighted rate for a channel whose signals are not equally likely."""
    if signals_per_period <= 0 or period <= 0:
        raise DomainError("Signals per period and period must be positive")
    return entropy_bits(dist) * signals_per_period / period


def requisite_variety_floor(v_d: float, v_r: float) -> float:
    """Smallest outcome variety a regulator of capacity ``v_r`` can hold against ``v_d``."""
    if v_d < 0 or v_r < 0:
        raise DomainError("Varieties must be non-negative")
    return max(0.0, v_d - v_r)


def outcome_count_floor(disturbance_count: int, regulator_count: int) -> int:
    """Count form of the law: outcomes cannot number fewer than ceil(V_D / V_R)."""
    if disturbance_count < 1 or regulator_count < 1:
        raise DomainError("Variety counts must be at least one")
    return -(-disturbance_count // regulator_count)


def _require_unit(channels: Sequence[ChannelRate], unit: TimeUnit) -> None:
    for ch in channels:
        if ch.unit != unit:
            raise UnitMismatchError(f"Channel '{ch.label}' is per {ch.unit.value}, expected per {unit.value}")


def analyze(s: RegulationScenario) -> RegulationVerdict:
    _require_unit(s.disturbances, s.time_unit)
    _require_unit(s.regulators, s.time_unit)
    total_disturbance = math.fsum(channel_rate_bits(ch) for ch in s.disturbances)
    total_regulation = math.fsum(channel_rate_bits(ch) for ch in s.regulators)
    verdict = RegulationVerdict(total_disturbance, total_regulation, s.time_unit)
    log.debug(
        "Regulation verdict: V_D=%s V_R=%s controllable=%s",
        total_disturbance,
        total_regulation,
        verdict.controllable,
    )
    return verdict


def max_controllable_disturbance(regulators: Sequence[ChannelRate]) -> float:
    """Largest total disturbance rate the regulators can hold at a zero outcome floor."""
    if not regulators:
        return 0.0
    _require_unit(regulators, regulators[0].unit)
    return math.fsum(channel_rate_bits(ch) for ch in regulators)


def entropy_balance(h_d: Sequence[float], h_r: Sequence[float]) -> float:
    """Slack sum(H_R) - sum(H_D); the regulated system needs slack >= 0."""
    if any(h < 0 for h in h_d) or any(h < 0 for h in h_r):
        raise DomainError("Entropy rates must be non-negative")
    return math.fsum(h_r) - math.fsum(h_d)


def max_reconfig_period(h_move: float, disturbance_rate: float, safety_margin: float) -> float:
    """Longest reconfiguration period that keeps the entropy balance non-negative.

    Each reconfiguration injects ``h_move`` bits of fresh configuration entropy,
    so a period T supplies h_move / T bits per time unit. Solving
    h_move / T >= disturbance_rate * safety_margin for T gives the bound.
    Returns ``UNBOUNDED`` when there is no disturbance.
    """
    if h_move <= 0:
        raise DomainError(f"Entropy per move must be positive, got {h_move}")
    if safety_margin < 1:
        raise DomainError(f"Safety margin must be at least 1, got {safety_margin}")
    if disturbance_rate < 0:
        raise DomainError(f"Disturbance rate must be non-negative, got {disturbance_rate}")
    if disturbance_rate == 0:
        return UNBOUNDED
    return h_move / (disturbance_rate * safety_margin)


def sampling_heuristic_period(compromise_time: float) -> float:
    """Reconfiguration period from the rule of moving twice as fast as the attacker compromises."""
    if compromise_time <= 0:
        raise DomainError("Compromise time must be positive")
    return compromise_time / 2
