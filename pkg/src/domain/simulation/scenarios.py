"""Preset scenarios: the retail kiosk, the MTD server pool, attacker variants and the immunity check."""

from dataclasses import replace
from typing import Optional, Union

from domain.durations import DurationDistribution
from domain.enums import ArrivalProcess, AttackVariant, InvalidationMode
from domain.exceptions import DomainError, ValidationError
from domain.mtd_process import ConfigSpace, ReconfigPolicy
from domain.simulation.models import AttackerModel, DefenderModel, Scenario

DEFAULT_KIOSK_HORIZON = 100_000.0
DEFAULT_POOL_HORIZON = 10_000.0
DEFAULT_VARIANT_STRENGTH = 0.5


def _as_duration(value: Union[float, DurationDistribution]) -> DurationDistribution:
    if isinstance(value, DurationDistribution):
        return value
    return DurationDistribution.constant(float(value))


def kiosk_scenario(
    detection_prob: float,
    detection_delay: Union[float, DurationDistribution],
    reset_latency: float,
    persistence_prob: float,
    attack_rate: float,
    horizon: float = DEFAULT_KIOSK_HORIZON,
) -> Scenario:
    """Single public terminal whose only regulator is detect-and-reboot.

    The configuration never changes, so every attack that reaches the kiosk
    works. Attacks arrive with exponential gaps of mean ``1 / attack_rate``.
    """
    if attack_rate <= 0:
        raise ValidationError(f"Attack rate must be positive, got {attack_rate}")
    attacker = AttackerModel(
        scan_interval=1.0 / attack_rate,
        exploit_dev_time=DurationDistribution.constant(0.0),
        arrivals=ArrivalProcess.POISSON,
    )
    defender = DefenderModel(
        space=ConfigSpace(1),
        policy=ReconfigPolicy.stationary(),
        detection_prob=detection_prob,
        detection_delay=_as_duration(detection_delay),
        reset_latency=reset_latency,
        persistence_prob=persistence_prob,
    )
    return Scenario(attacker, defender, horizon, label="kiosk")


def mtd_pool_scenario(
    pool_size: int,
    configs: int,
    reset_period: Optional[float],
    attacker: Optional[AttackerModel] = None,
    horizon: float = DEFAULT_POOL_HORIZON,
) -> Scenario:
    """Pool of ``pool_size`` servers each running a distinct configuration.

    Each request is dispatched to a uniformly chosen member. ``reset_period``
    re-images the pool to its clean state; ``None`` disables resets.
    """
    if pool_size < 2:
        raise DomainError(f"An MTD pool needs at least two members, got {pool_size}")
    if configs < pool_size:
        raise DomainError(f"A pool of {pool_size} members needs at least as many configurations, got {configs}")
    if attacker is None:
        attacker = AttackerModel(scan_interval=1.0, exploit_dev_time=DurationDistribution.constant(0.0))
    defender = DefenderModel(space=ConfigSpace(configs), policy=ReconfigPolicy.stationary())
    return Scenario(
        attacker,
        defender,
        horizon,
        pool_size=pool_size,
        pool_reset_period=reset_period,
        label="mtd_pool",
    )


def attacker_variant(
    kind: AttackVariant, base: AttackerModel, strength: float = DEFAULT_VARIANT_STRENGTH
) -> AttackerModel:
    """Qualitative attack classes expressed as attacker parameters.

    Circumvention and deputy attacks go around the randomization entirely
    (``bypass_prob = strength``). Entropy reduction lets an exploit built for one
    configuration work elsewhere (``mismatch_success_prob = strength``). Probing
    scans twice as often and incremental attacks develop exploits twice as fast,
    so both lose to defenders that move quickly enough.
    """
    if not 0.0 <= strength <= 1.0:
        raise ValidationError(f"Variant strength must lie in [0, 1], got {strength}")
    if kind == AttackVariant.BRUTE_FORCE:
        return replace(base, retry=True)
    if kind in (AttackVariant.CIRCUMVENTION, AttackVariant.DEPUTY):
        return replace(base, bypass_prob=max(base.bypass_prob, strength))
    if kind == AttackVariant.ENTROPY_REDUCTION:
        return replace(base, mismatch_success_prob=max(base.mismatch_success_prob, strength))
    if kind == AttackVariant.PROBING:
        return replace(base, scan_interval=base.scan_interval / 2, retry=True)
    dev = base.exploit_dev_time
    return replace(base, exploit_dev_time=replace(dev, mean=dev.mean / 2, spread=dev.spread / 2), retry=True)


def is_strictly_immune(scenario: Scenario) -> bool:
    """True when no launch can ever land, whatever the seed.

    Under strict epoch invalidation a matching exploit must be launched before
    the next move. When even the fastest exploit takes longer than the longest
    wait between moves, every launch crosses a move and misses, unless the
    attacker can bypass the configuration or succeed on a mismatch.
    """
    attacker = scenario.attacker
    if scenario.invalidation != InvalidationMode.STRICT_EPOCH:
        return False
    if attacker.bypass_prob > 0 or attacker.mismatch_success_prob > 0:
        return False
    return attacker.exploit_dev_time.minimum > scenario.defender.policy.longest_gap
