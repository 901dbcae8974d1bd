"""Value objects of the attacker/defender simulation."""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from domain.durations import DurationDistribution
from domain.enums import ArrivalProcess, InvalidationMode, SimEventKind
from domain.exceptions import ValidationError
from domain.mtd_process import ConfigSpace, ReconfigPolicy


def _require_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class AttackerModel:
    scan_interval: float
    exploit_dev_time: DurationDistribution
    retry: bool = True
    mismatch_success_prob: float = 0.0
    bypass_prob: float = 0.0
    arrivals: ArrivalProcess = ArrivalProcess.PERIODIC_SCAN

    def __post_init__(self) -> None:
        if self.scan_interval <= 0:
            raise ValidationError(f"Scan interval must be positive, got {self.scan_interval}")
        _require_probability("mismatch_success_prob", self.mismatch_success_prob)
        _require_probability("bypass_prob", self.bypass_prob)


@dataclass(frozen=True)
class DefenderModel:
    space: ConfigSpace
    policy: ReconfigPolicy
    detection_prob: float = 0.0
    detection_delay: DurationDistribution = field(default_factory=lambda: DurationDistribution.constant(0.0))
    reset_latency: float = 1.0
    persistence_prob: float = 0.0
    input_filter_prob: float = 0.0
    allow_same_config: bool = False

    def __post_init__(self) -> None:
        _require_probability("detection_prob", self.detection_prob)
        _require_probability("persistence_prob", self.persistence_prob)
        _require_probability("input_filter_prob", self.input_filter_prob)
        if self.reset_latency <= 0:
            raise ValidationError(f"Reset latency must be positive, got {self.reset_latency}")


@dataclass(frozen=True)
class Scenario:
    attacker: AttackerModel
    defender: DefenderModel
    horizon: float
    pool_size: int = 1
    invalidation: InvalidationMode = InvalidationMode.STRICT_EPOCH
    pool_reset_period: Optional[float] = None
    label: str = "scenario"

    def __post_init__(self) -> None:
        if self.horizon <= 0:
            raise ValidationError(f"Horizon must be positive, got {self.horizon}")
        if self.pool_size < 1:
            raise ValidationError(f"Pool size must be at least 1, got {self.pool_size}")
        if self.pool_reset_period is not None and self.pool_reset_period <= 0:
            raise ValidationError("Pool reset period must be positive")


@dataclass(frozen=True, slots=True)
class SimEvent:
    time: float
    kind: SimEventKind
    config: Optional[int] = None
    member: Optional[int] = None
    cause: Optional[str] = None
    outcome: Optional[str] = None

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"time": self.time, "kind": self.kind.value}
        for name in ("config", "member", "cause", "outcome"):
            value = getattr(self, name)
            if value is not None:
                record[name] = value
        return record


@dataclass(frozen=True)
class SimTrace:
    scenario: Scenario
    seed: int
    events: tuple[SimEvent, ...]

    def to_records(self) -> list[dict[str, Any]]:
        return [event.to_record() for event in self.events]

    def to_jsonl(self) -> str:
        header = json.dumps({"seed": self.seed, "scenario": asdict(self.scenario)}, default=str, sort_keys=True)
        lines = [header] + [json.dumps(record, sort_keys=True) for record in self.to_records()]
        return "\n".join(lines) + "\n"

    def of_kind(self, kind: SimEventKind) -> list[SimEvent]:
        return [event for event in self.events if event.kind == kind]


@dataclass(frozen=True)
class SimMetrics:
    seed: int
    time_to_first_compromise: Optional[float]
    compromised_fraction: float
    successful_attacks: int
    exploits_developed: int
    availability: float
    attempts_to_first_success: Optional[int] = None
    attacks_launched: int = 0
    bypass_successes: int = 0
    detections: int = 0
    resets: int = 0
    downtime: float = 0.0
    dwell_time: float = 0.0
