"""Executes validated scenario-file requests and turns their results into report rows."""

import logging
import math
import time
from typing import Any, Optional

from opentelemetry import trace

from domain.enums import TimeUnit
from domain.regulation import (
    UNBOUNDED,
    analyze,
    channel_entropy_rate,
    max_reconfig_period,
    sampling_heuristic_period,
)
from domain.simulation import MetricsSummary, SimMetrics, is_strictly_immune, replicate, run, summarize, sweep
from domain.variety_calculus import (
    brute_force_count,
    constraint_reduction_bits,
    entropy_bits,
    variety_count,
)
from integration.models import (
    BoundRequest,
    EntropyRequest,
    RegulationRequest,
    ReportRow,
    ReportSection,
    ScenarioRequest,
    SimulationRequest,
    SweepRequest,
    VarietyRequest,
)
from observability import attacks_succeeded, requests_executed, simulation_duration, simulations_run

log = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)

BITS_DECIMALS = 4
RATIO_DECIMALS = 2
SUMMARY_COLUMNS = (
    "compromise_probability",
    "time_to_first_compromise",
    "attempts_to_first_success",
    "compromised_fraction",
    "successful_attacks",
    "exploits_developed",
    "availability",
)


def format_duration(value: float, unit: TimeUnit) -> str:
    """``10 hours``, ``1 hour``, ``2.5 days`` or ``unbounded``."""
    if math.isinf(value):
        return "unbounded"
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return f"{text} {unit.value if value == 1 else unit.plural()}"


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return value


def metrics_row(metrics: SimMetrics) -> ReportRow:
    return {
        "seed": metrics.seed,
        "time_to_first_compromise": metrics.time_to_first_compromise,
        "attempts_to_first_success": metrics.attempts_to_first_success,
        "compromised_fraction": metrics.compromised_fraction,
        "successful_attacks": metrics.successful_attacks,
        "exploits_developed": metrics.exploits_developed,
        "attacks_launched": metrics.attacks_launched,
        "bypass_successes": metrics.bypass_successes,
        "detections": metrics.detections,
        "resets": metrics.resets,
        "availability": metrics.availability,
    }


def summary_columns(summary: MetricsSummary) -> ReportRow:
    row: ReportRow = {"runs": summary.runs}
    for name in SUMMARY_COLUMNS:
        aggregate = summary[name]
        row[f"{name}_mean"] = _finite(aggregate.mean)
        row[f"{name}_std"] = _finite(aggregate.std)
        row[f"{name}_ci_low"] = _finite(aggregate.ci_low)
        row[f"{name}_ci_high"] = _finite(aggregate.ci_high)
        if aggregate.excluded:
            row[f"{name}_excluded"] = aggregate.excluded
    return row


class RequestExecutor:
    """Runs one request at a time; sweep and replication runs fan out to ``workers`` threads."""

    def __init__(self, workers: int = 1) -> None:
        self.workers = max(1, workers)

    def execute(self, request: ScenarioRequest, default_seed: int) -> tuple[ReportSection, list[int]]:
        """Run ``request`` and return its report section and the seeds it used."""
        kind = type(request).__name__.removesuffix("Request").lower()
        log.info("Executing %s request '%s'", kind, request.name)
        requests_executed.add(1, {"kind": kind})
        seeds: list[int] = []
        if isinstance(request, VarietyRequest):
            rows = self.variety(request)
        elif isinstance(request, EntropyRequest):
            rows = self.entropy(request)
        elif isinstance(request, RegulationRequest):
            rows = self.regulation(request)
        elif isinstance(request, BoundRequest):
            rows = self.bound(request)
        elif isinstance(request, SimulationRequest):
            rows, seeds = self.simulation(request, default_seed)
        else:
            rows, seeds = self.sweep(request, default_seed)
        return ReportSection(name=request.name, kind=kind, rows=rows), seeds

    def variety(self, request: VarietyRequest) -> list[ReportRow]:
        space = request.space
        measure = variety_count(space)
        unconstrained = variety_count(space.unconstrained())
        # An empty space has no variety in bits and nothing to reduce from.
        empty = measure.count == 0
        row: ReportRow = {
            "symbols": len(space.alphabet),
            "length": space.length,
            "count": measure.count,
            "bits": None if empty else round(measure.bits, BITS_DECIMALS),
            "unconstrained_count": unconstrained.count,
            "unconstrained_bits": round(unconstrained.bits, BITS_DECIMALS),
            "reduction_bits": None if empty else round(constraint_reduction_bits(space), BITS_DECIMALS),
        }
        if request.brute_force_check:
            row["brute_force_count"] = brute_force_count(space)
        return [row]

    def entropy(self, request: EntropyRequest) -> list[ReportRow]:
        outcomes = len(request.distribution)
        row: ReportRow = {
            "outcomes": outcomes,
            "entropy_bits": round(entropy_bits(request.distribution), BITS_DECIMALS),
            "max_bits": round(math.log2(outcomes), BITS_DECIMALS),
        }
        if request.signals_per_period is not None and request.period is not None and request.unit is not None:
            rate = channel_entropy_rate(request.distribution, request.signals_per_period, request.period)
            row["rate_bits_per_unit"] = round(rate, BITS_DECIMALS)
            row["unit"] = request.unit.value
        return [row]

    def regulation(self, request: RegulationRequest) -> list[ReportRow]:
        verdict = analyze(request.scenario)
        deficit = round(verdict.deficit_ratio, RATIO_DECIMALS) if verdict.deficit_ratio is not None else None
        return [
            {
                "unit": verdict.unit.value,
                "disturbance_bits": round(verdict.total_disturbance, BITS_DECIMALS),
                "regulation_bits": round(verdict.total_regulation, BITS_DECIMALS),
                "outcome_floor": round(verdict.outcome_floor, BITS_DECIMALS),
                "controllable": verdict.controllable,
                "deficit_ratio": deficit,
                "verdict": "sufficient" if verdict.controllable else "insufficient",
            }
        ]

    def bound(self, request: BoundRequest) -> list[ReportRow]:
        unit = request.rate.unit
        period = max_reconfig_period(request.h_move, request.rate.value, request.margin)
        row: ReportRow = {
            "h_move": request.h_move,
            "rate": request.rate.value,
            "unit": unit.value,
            "margin": request.margin,
            "max_period": None if period == UNBOUNDED else period,
            "max_period_text": format_duration(period, unit),
        }
        if request.compromise_time is not None:
            heuristic = sampling_heuristic_period(request.compromise_time)
            row["heuristic_period"] = heuristic
            row["heuristic_period_text"] = format_duration(heuristic, unit)
        return [row]

    def _record(self, runs: list[SimMetrics], started: float, kind: str) -> None:
        simulations_run.add(len(runs), {"kind": kind})
        attacks_succeeded.add(sum(m.successful_attacks for m in runs), {"kind": kind})
        simulation_duration.record((time.time() - started) * 1000, {"kind": kind})

    def simulation(self, request: SimulationRequest, default_seed: int) -> tuple[list[ReportRow], list[int]]:
        started = time.time()
        scenario_columns: dict[str, Any] = {
            "strictly_immune": is_strictly_immune(request.scenario),
            "unit": request.unit.value,
        }
        if request.seeds is not None:
            runs = [run(request.scenario, seed)[1] for seed in request.seeds]
            self._record(runs, started, "simulation")
            return [{**metrics_row(m), **scenario_columns} for m in runs], list(request.seeds)

        base_seed = request.base_seed if request.base_seed is not None else default_seed
        replications = request.replications or 1
        with tracer.start_as_current_span("replicate") as span:
            span.set_attribute("simulation.name", request.name)
            span.set_attribute("simulation.replications", replications)
            runs = replicate(request.scenario, replications, base_seed, self.workers)
        self._record(runs, started, "simulation")
        if replications == 1:
            return [{**metrics_row(runs[0]), **scenario_columns}], [base_seed]
        row = {"base_seed": base_seed, **summary_columns(summarize(runs)), **scenario_columns}
        return [row], list(range(base_seed, base_seed + replications))

    def sweep(self, request: SweepRequest, default_seed: int) -> tuple[list[ReportRow], list[int]]:
        started = time.time()
        base_seed = request.base_seed if request.base_seed is not None else default_seed
        with tracer.start_as_current_span("sweep") as span:
            span.set_attribute("sweep.name", request.name)
            span.set_attribute("sweep.parameter", request.parameter.value)
            span.set_attribute("sweep.values", len(request.values))
            rows = sweep(
                request.template,
                request.parameter,
                request.values,
                request.replications,
                base_seed,
                self.workers,
            )
        simulations_run.add(len(rows) * request.replications, {"kind": "sweep"})
        simulation_duration.record((time.time() - started) * 1000, {"kind": "sweep"})
        report_rows = [
            {
                "parameter": row.parameter.value,
                "value": row.value,
                "base_seed": base_seed,
                **summary_columns(row.summary),
                "unit": request.unit.value,
            }
            for row in rows
        ]
        return report_rows, list(range(base_seed, base_seed + request.replications))
