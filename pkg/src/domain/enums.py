from enum import Enum

from domain.exceptions import ValidationError


class TimeUnit(str, Enum):
    SECOND = "second"
    MINUTE = "minute"
    HOUR = "hour"
    DAY = "day"

    @classmethod
    def parse(cls, label: str) -> "TimeUnit":
        """Resolve a unit label such as ``s``, ``hours`` or ``Day``."""
        key = label.strip().lower()
        unit = _TIME_UNIT_ALIASES.get(key)
        if unit is None:
            raise ValidationError(f"Unknown time unit '{label}'")
        return unit

    def plural(self) -> str:
        return f"{self.value}s"


_TIME_UNIT_ALIASES: dict[str, TimeUnit] = {
    "s": TimeUnit.SECOND,
    "sec": TimeUnit.SECOND,
    "secs": TimeUnit.SECOND,
    "second": TimeUnit.SECOND,
    "seconds": TimeUnit.SECOND,
    "min": TimeUnit.MINUTE,
    "mins": TimeUnit.MINUTE,
    "minute": TimeUnit.MINUTE,
    "minutes": TimeUnit.MINUTE,
    "h": TimeUnit.HOUR,
    "hr": TimeUnit.HOUR,
    "hrs": TimeUnit.HOUR,
    "hour": TimeUnit.HOUR,
    "hours": TimeUnit.HOUR,
    "d": TimeUnit.DAY,
    "day": TimeUnit.DAY,
    "days": TimeUnit.DAY,
}


class PolicyKind(str, Enum):
    STATIONARY = "stationary"
    PERIODIC = "periodic"
    POLY_PERIODIC = "poly_periodic"
    PSEUDO_RANDOM = "pseudo_random"


class ProcessKind(str, Enum):
    """Process classes, innermost first: each class is contained in the next."""

    STATIONARY = "stationary"
    CYCLOSTATIONARY = "cyclostationary"
    POLY_CYCLOSTATIONARY = "poly_cyclostationary"
    NON_STATIONARY = "non_stationary"

    @property
    def rank(self) -> int:
        return list(ProcessKind).index(self)


class DistributionKind(str, Enum):
    CONSTANT = "constant"
    EXPONENTIAL = "exponential"
    UNIFORM = "uniform"


class ArrivalProcess(str, Enum):
    PERIODIC_SCAN = "periodic_scan"
    POISSON = "poisson"


class InvalidationMode(str, Enum):
    STRICT_EPOCH = "strict_epoch"
    VALUE_MATCH = "value_match"


class SimEventKind(str, Enum):
    """Trace event kinds in tie-break order for events sharing a timestamp."""

    RECONFIGURE = "reconfigure"
    SCAN = "scan"
    EXPLOIT_READY = "exploit_ready"
    ATTACK_LAUNCHED = "attack_launched"
    COMPROMISE_START = "compromise_start"
    DETECTION = "detection"
    RESET_COMPLETE = "reset_complete"

    @property
    def priority(self) -> int:
        return list(SimEventKind).index(self)


class SweepParameter(str, Enum):
    RECONFIG_PERIOD = "reconfig_period"
    POOL_SIZE = "pool_size"
    DETECTION_PROB = "detection_prob"


class AttackVariant(str, Enum):
    BRUTE_FORCE = "brute_force"
    CIRCUMVENTION = "circumvention"
    DEPUTY = "deputy"
    ENTROPY_REDUCTION = "entropy_reduction"
    PROBING = "probing"
    INCREMENTAL = "incremental"
