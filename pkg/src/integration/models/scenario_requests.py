"""Validated scenario-file requests, converted to domain values."""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from domain.enums import SweepParameter, TimeUnit
from domain.regulation import Rate, RegulationScenario
from domain.simulation import Scenario
from domain.variety_calculus import Distribution, SequenceSpace


@dataclass(frozen=True)
class VarietyRequest:
    name: str
    space: SequenceSpace
    brute_force_check: bool = False


@dataclass(frozen=True)
class EntropyRequest:
    name: str
    distribution: Distribution
    signals_per_period: Optional[float] = None
    period: Optional[float] = None
    unit: Optional[TimeUnit] = None


@dataclass(frozen=True)
class RegulationRequest:
    name: str
    scenario: RegulationScenario


@dataclass(frozen=True)
class BoundRequest:
    name: str
    h_move: float
    rate: Rate
    margin: float = 1.0
    compromise_time: Optional[float] = None


@dataclass(frozen=True)
class SimulationRequest:
    name: str
    scenario: Scenario
    unit: TimeUnit
    seeds: Optional[tuple[int, ...]] = None
    replications: Optional[int] = None
    base_seed: Optional[int] = None


@dataclass(frozen=True)
class SweepRequest:
    name: str
    template: Scenario
    unit: TimeUnit
    parameter: SweepParameter
    values: tuple[float, ...]
    replications: int = 1
    base_seed: Optional[int] = None


ScenarioRequest = Union[VarietyRequest, EntropyRequest, RegulationRequest, BoundRequest, SimulationRequest, SweepRequest]


@dataclass(frozen=True)
class ScenarioFile:
    path: Path
    digest: str
    version: int
    requests: tuple[ScenarioRequest, ...]
    seed: Optional[int] = None

    def of_type(self, request_type: type) -> list[ScenarioRequest]:
        return [request for request in self.requests if isinstance(request, request_type)]
