"""Seeded discrete-event simulation of the attacker/defender cyber cycle."""

from .engine import compute_metrics, run
from .models import AttackerModel, DefenderModel, Scenario, SimEvent, SimMetrics, SimTrace
from .scenarios import attacker_variant, is_strictly_immune, kiosk_scenario, mtd_pool_scenario
from .statistics import MetricAggregate, MetricsSummary, SweepRow, replicate, summarize, sweep

__all__ = [
    "AttackerModel",
    "DefenderModel",
    "MetricAggregate",
    "MetricsSummary",
    "Scenario",
    "SimEvent",
    "SimMetrics",
    "SimTrace",
    "SweepRow",
    "attacker_variant",
    "compute_metrics",
    "is_strictly_immune",
    "kiosk_scenario",
    "mtd_pool_scenario",
    "replicate",
    "run",
    "summarize",
    "sweep",
]
