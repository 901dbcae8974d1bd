"""Observability utilities and metrics."""
from .metrics import (
    attacks_succeeded,
    worked_example_checks_failed,
    requests_executed,
    simulation_duration,
    simulations_run,
)

__all__ = [
    "simulations_run",
    "attacks_succeeded",
    "worked_example_checks_failed",
    "requests_executed",
    "simulation_duration",
]
