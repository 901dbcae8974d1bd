"""Replications, aggregates and parameter sweeps over simulation runs."""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from statistics import NormalDist
from typing import Optional

import numpy as np

from domain.enums import SweepParameter
from domain.exceptions import DomainError
from domain.mtd_process import ReconfigPolicy
from domain.simulation.engine import run
from domain.simulation.models import Scenario, SimMetrics

log = logging.getLogger(__name__)

Z_95 = NormalDist().inv_cdf(0.975)
COMPROMISE_PROBABILITY = "compromise_probability"
SUMMARY_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(SimMetrics) if f.name != "seed") + (
    COMPROMISE_PROBABILITY,
)


@dataclass(frozen=True)
class MetricAggregate:
    mean: float
    std: float
    ci_low: float
    ci_high: float
    count: int
    excluded: int = 0


@dataclass(frozen=True)
class MetricsSummary:
    runs: int
    seeds: tuple[int, ...]
    metrics: dict[str, MetricAggregate]

    def __getitem__(self, name: str) -> MetricAggregate:
        return self.metrics[name]

    def mean(self, name: str) -> float:
        return self.metrics[name].mean


@dataclass(frozen=True)
class SweepRow:
    parameter: SweepParameter
    value: float
    summary: MetricsSummary


def _aggregate(values: Sequence[Optional[float]]) -> MetricAggregate:
    present = np.array([v for v in values if v is not None], dtype=float)
    excluded = len(values) - present.size
    if present.size == 0:
        return MetricAggregate(math.nan, math.nan, math.nan, math.nan, 0, excluded)
    mean = float(present.mean())
    std = float(present.std(ddof=1)) if present.size > 1 else 0.0
    half_width = Z_95 * std / math.sqrt(present.size)
    return MetricAggregate(mean, std, mean - half_width, mean + half_width, int(present.size), excluded)


def summarize(runs: Sequence[SimMetrics]) -> MetricsSummary:
    """Mean, sample deviation and 95% normal interval for every metric.

    Runs are folded in seed order so the floating-point sums do not depend on
    the order replications finished in. Runs without a compromise are left out
    of the time-to-compromise aggregates and counted as excluded.
    """
    if not runs:
        raise DomainError("At least one run is required to summarize")
    ordered = sorted(runs, key=lambda m: m.seed)
    metrics: dict[str, MetricAggregate] = {}
    for name in SUMMARY_FIELDS:
        if name == COMPROMISE_PROBABILITY:
            column: list[Optional[float]] = [float(m.time_to_first_compromise is not None) for m in ordered]
        else:
            column = [getattr(m, name) for m in ordered]
        metrics[name] = _aggregate(column)
    return MetricsSummary(len(ordered), tuple(m.seed for m in ordered), metrics)


def replicate(scenario: Scenario, replications: int, base_seed: int, workers: int = 1) -> list[SimMetrics]:
    """Run seeds ``base_seed .. base_seed + replications - 1`` and return their metrics in seed order."""
    if replications < 1:
        raise DomainError(f"Replications must be at least 1, got {replications}")
    seeds = range(base_seed, base_seed + replications)
    if workers <= 1:
        return [run(scenario, seed)[1] for seed in seeds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda seed: run(scenario, seed)[1], seeds))


def apply_parameter(template: Scenario, parameter: SweepParameter, value: float) -> Scenario:
    if parameter == SweepParameter.RECONFIG_PERIOD:
        defender = replace(template.defender, policy=ReconfigPolicy.periodic(value))
        return replace(template, defender=defender)
    if parameter == SweepParameter.POOL_SIZE:
        if value != int(value):
            raise DomainError(f"Pool size must be an integer, got {value}")
        return replace(template, pool_size=int(value))
    return replace(template, defender=replace(template.defender, detection_prob=value))


def sweep(
    template: Scenario,
    parameter: SweepParameter,
    values: Sequence[float],
    replications: int,
    base_seed: int,
    workers: int = 1,
) -> list[SweepRow]:
    """One aggregated row per value, each replicated over the same seed set."""
    if not values:
        raise DomainError("A sweep needs at least one value")
    if replications < 1:
        raise DomainError(f"Replications must be at least 1, got {replications}")
    rows = []
    for value in values:
        scenario = apply_parameter(template, parameter, value)
        summary = summarize(replicate(scenario, replications, base_seed, workers))
        log.debug("Sweep %s=%s: mean successes %.4f", parameter.value, value, summary.mean("successful_attacks"))
        rows.append(SweepRow(parameter, value, summary))
    return rows
