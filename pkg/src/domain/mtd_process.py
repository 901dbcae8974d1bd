"""Defender configuration trajectories.

A defender whose configuration never changes is a stationary process. Changing
it on a fixed period makes it cyclostationary, on several periods
poly-cyclostationary, and on pseudo-random gaps non-stationary. Each class
contains the previous one, so membership is tested by rank.
"""

import bisect
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

from domain.durations import DurationDistribution
from domain.enums import PolicyKind, ProcessKind
from domain.exceptions import DomainError, ValidationError
from domain.random_streams import RandomStreams, make_generator
from domain.variety_calculus import CodingTransform, VarietyMeasure, log2_exact

log = logging.getLogger(__name__)

TIME_TOLERANCE = 1e-9
TRAJECTORY_STREAM = "trajectory"


@dataclass(frozen=True)
class ConfigSpace:
    size: int
    per_move_entropy: Optional[float] = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValidationError(f"Configuration space needs at least one configuration, got {self.size}")
        if self.per_move_entropy is None:
            object.__setattr__(self, "per_move_entropy", log2_exact(self.size))
        elif not 0 <= self.per_move_entropy <= log2_exact(self.size) + TIME_TOLERANCE:
            raise ValidationError("Per-move entropy must lie in [0, log2(size)]")


@dataclass(frozen=True)
class ReconfigPolicy:
    kind: PolicyKind
    periods: tuple[float, ...] = ()
    interval: Optional[DurationDistribution] = None

    def __post_init__(self) -> None:
        if any(period <= 0 for period in self.periods):
            raise ValidationError("Reconfiguration periods must be positive")
        if self.kind == PolicyKind.STATIONARY and (self.periods or self.interval):
            raise ValidationError("A stationary policy has no periods")
        if self.kind == PolicyKind.PERIODIC and len(self.periods) != 1:
            raise ValidationError("A periodic policy has exactly one period")
        if self.kind == PolicyKind.POLY_PERIODIC and len(set(self.periods)) < 2:
            raise ValidationError("A poly-periodic policy needs at least two distinct periods")
        if self.kind == PolicyKind.PSEUDO_RANDOM:
            if self.interval is None or self.interval.is_constant or self.interval.mean <= 0:
                raise ValidationError("A pseudo-random policy needs a non-constant interval distribution")

    @classmethod
    def stationary(cls) -> "ReconfigPolicy":
        return cls(PolicyKind.STATIONARY)

    @classmethod
    def periodic(cls, period: float) -> "ReconfigPolicy":
        return cls(PolicyKind.PERIODIC, (period,))

    @classmethod
    def poly_periodic(cls, *periods: float) -> "ReconfigPolicy":
        return cls(PolicyKind.POLY_PERIODIC, tuple(periods))

    @classmethod
    def pseudo_random(cls, interval: DurationDistribution) -> "ReconfigPolicy":
        return cls(PolicyKind.PSEUDO_RANDOM, (), interval)

    @property
    def longest_gap(self) -> float:
        """Longest possible wait for the next reconfiguration (inf when stationary).

        Poly-periodic moves fall on the multiples of every period, so no wait
        exceeds the shortest one.
        """
        if self.kind == PolicyKind.STATIONARY:
            return math.inf
        if self.kind == PolicyKind.PSEUDO_RANDOM:
            assert self.interval is not None
            return self.interval.maximum
        return min(self.periods)


@dataclass(frozen=True)
class ConfigTrajectory:
    events: tuple[tuple[float, int], ...]
    horizon: float
    origin: int
    size: int
    process_kind: ProcessKind = ProcessKind.STATIONARY
    cycle_periods: tuple[float, ...] = ()
    times: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.horizon <= 0:
            raise ValidationError("Trajectory horizon must be positive")
        times = tuple(time for time, _ in self.events)
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError("Reconfiguration times must be strictly increasing")
        if times and (times[0] < 0 or times[-1] > self.horizon):
            raise ValidationError("Reconfiguration times must lie within the horizon")
        if not all(0 <= config < self.size for _, config in self.events) or not 0 <= self.origin < self.size:
            raise ValidationError("Configuration ids must lie in [0, size)")
        object.__setattr__(self, "times", times)

    def epoch(self, t: float) -> int:
        """Number of reconfigurations at or before ``t``."""
        return bisect.bisect_right(self.times, t)

    def lookup(self, t: float) -> int:
        if not 0 <= t <= self.horizon:
            raise DomainError(f"Time {t} lies outside [0, {self.horizon}]")
        index = self.epoch(t)
        return self.origin if index == 0 else self.events[index - 1][1]

    def events_in(self, t0: float, t1: float) -> tuple[tuple[float, int], ...]:
        """Events with t0 < time <= t1."""
        lo = bisect.bisect_right(self.times, t0)
        hi = bisect.bisect_right(self.times, t1)
        return self.events[lo:hi]


def classify(policy: ReconfigPolicy) -> ProcessKind:
    return {
        PolicyKind.STATIONARY: ProcessKind.STATIONARY,
        PolicyKind.PERIODIC: ProcessKind.CYCLOSTATIONARY,
        PolicyKind.POLY_PERIODIC: ProcessKind.POLY_CYCLOSTATIONARY,
        PolicyKind.PSEUDO_RANDOM: ProcessKind.NON_STATIONARY,
    }[policy.kind]


def is_member(kind: ProcessKind, of: ProcessKind) -> bool:
    """Whether a process of class ``kind`` also belongs to class ``of``."""
    return kind.rank <= of.rank


def memberships(policy: ReconfigPolicy) -> frozenset[ProcessKind]:
    kind = classify(policy)
    return frozenset(outer for outer in ProcessKind if is_member(kind, outer))


def _periodic_times(periods: Sequence[float], horizon: float) -> list[float]:
    times: list[float] = []
    for period in periods:
        count = math.floor(horizon / period + TIME_TOLERANCE)
        times.extend(k * period for k in range(1, count + 1))
    times.sort()
    coalesced: list[float] = []
    for time in times:
        if coalesced and time - coalesced[-1] <= TIME_TOLERANCE * max(1.0, abs(time)):
            continue
        coalesced.append(min(time, horizon))
    return coalesced


def _random_times(interval: DurationDistribution, horizon: float, streams: RandomStreams) -> list[float]:
    rng = streams.stream(f"{TRAJECTORY_STREAM}.gaps")
    times: list[float] = []
    now = 0.0
    while True:
        gap = interval.sample(rng)
        if gap <= 0:
            continue
        now += gap
        if now > horizon:
            return times
        times.append(now)


def generate_trajectory(
    policy: ReconfigPolicy,
    space: ConfigSpace,
    horizon: float,
    seed: int,
    allow_same_config: bool = False,
    origin: Optional[int] = None,
) -> ConfigTrajectory:
    """Deterministic trajectory for (policy, space, horizon, seed).

    Each reconfiguration draws uniformly among the other ``size - 1`` configurations
    so that the system genuinely moves; ``allow_same_config`` draws over all ``size``.
    """
    if horizon <= 0:
        raise DomainError(f"Horizon must be positive, got {horizon}")
    streams = RandomStreams(seed)
    if policy.kind in (PolicyKind.PERIODIC, PolicyKind.POLY_PERIODIC):
        times = _periodic_times(policy.periods, horizon)
    elif policy.kind == PolicyKind.PSEUDO_RANDOM:
        assert policy.interval is not None
        times = _random_times(policy.interval, horizon, streams)
    else:
        times = []

    current = streams.uniform_index(f"{TRAJECTORY_STREAM}.origin", space.size) if origin is None else origin
    start = current
    rng = streams.stream(f"{TRAJECTORY_STREAM}.configs") if times and space.size > 1 else None
    events: list[tuple[float, int]] = []
    for time in times:
        if rng is not None:
            if allow_same_config:
                current = int(rng.integers(space.size))
            else:
                draw = int(rng.integers(space.size - 1))
                current = draw + 1 if draw >= current else draw
        events.append((time, current))

    log.debug("Generated %s trajectory with %d events over %s", policy.kind.value, len(events), horizon)
    return ConfigTrajectory(
        events=tuple(events),
        horizon=horizon,
        origin=start,
        size=space.size,
        process_kind=classify(policy),
        cycle_periods=policy.periods,
    )


def interleave(components: Sequence[ConfigTrajectory], slot: float) -> ConfigTrajectory:
    """Round-robin composite exposing component ``j mod k`` during slot ``j``."""
    if not components:
        raise DomainError("At least one component trajectory is required")
    if slot <= 0:
        raise DomainError(f"Schedule slot must be positive, got {slot}")
    horizon = components[0].horizon
    if any(abs(c.horizon - horizon) > TIME_TOLERANCE for c in components):
        raise DomainError("Interleaved components must share a horizon")
    if len(components) == 1:
        return components[0]

    k = len(components)
    origin = components[0].lookup(0.0)
    current = origin
    events: list[tuple[float, int]] = []

    def expose(time: float, config: int) -> None:
        nonlocal current
        if config != current:
            events.append((time, config))
            current = config

    j = 0
    while j * slot <= horizon:
        start, end = j * slot, (j + 1) * slot
        active = components[j % k]
        if j > 0:
            expose(start, active.lookup(start))
        for time, config in active.events_in(start, min(end, horizon)):
            if time < end:
                expose(time, config)
        j += 1

    kinds = [c.process_kind for c in components]
    if all(kind == ProcessKind.STATIONARY for kind in kinds):
        distinct = len({c.origin for c in components})
        kind = ProcessKind.CYCLOSTATIONARY if distinct > 1 else ProcessKind.STATIONARY
    elif ProcessKind.NON_STATIONARY in kinds:
        kind = ProcessKind.NON_STATIONARY
    else:
        kind = ProcessKind.POLY_CYCLOSTATIONARY
    periods = (k * slot,) if kind != ProcessKind.STATIONARY else ()
    for c in components:
        periods += tuple(p for p in c.cycle_periods if p not in periods)

    return ConfigTrajectory(
        events=tuple(events),
        horizon=horizon,
        origin=origin,
        size=max(c.size for c in components),
        process_kind=kind,
        cycle_periods=periods,
    )


def observed_variety(traj: ConfigTrajectory, t0: float, t1: float) -> VarietyMeasure:
    """Distinct configurations exposed in the closed window [t0, t1]."""
    if not 0 <= t0 < t1 <= traj.horizon:
        raise DomainError(f"Window [{t0}, {t1}] must satisfy 0 <= t0 < t1 <= {traj.horizon}")
    configs = {traj.lookup(t0)}
    configs.update(config for _, config in traj.events_in(t0, t1))
    return VarietyMeasure(len(configs))


class ConfigEncoding:
    """Per-epoch one-to-one relabelling U of configuration ids.

    Holding the inverse U^-1 for an epoch is equivalent to knowing the
    configuration id in force during that epoch.
    """

    def __init__(self, size: int, seed: int) -> None:
        if size < 1:
            raise ValidationError("Encoding needs at least one configuration")
        self.size = size
        self.seed = seed

    def transform(self, epoch: int) -> CodingTransform:
        permutation = make_generator(self.seed, f"encoding.{epoch}").permutation(self.size)
        return CodingTransform({config: int(code) for config, code in enumerate(permutation)})

    def encode(self, config: int, epoch: int) -> int:
        return int(self.transform(epoch)(config))

    def decode(self, code: int, epoch: int) -> int:
        return int(self.transform(epoch).inverse()(code))
