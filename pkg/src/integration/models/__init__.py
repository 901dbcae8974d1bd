from .report_dto import ReportDto, ReportMetadata, ReportRow, ReportSection
from .scenario_file import ScenarioDocument
from .scenario_requests import (
    BoundRequest,
    EntropyRequest,
    RegulationRequest,
    ScenarioFile,
    ScenarioRequest,
    SimulationRequest,
    SweepRequest,
    VarietyRequest,
)

__all__ = [
    "BoundRequest",
    "EntropyRequest",
    "RegulationRequest",
    "ReportDto",
    "ReportMetadata",
    "ReportRow",
    "ReportSection",
    "ScenarioDocument",
    "ScenarioFile",
    "ScenarioRequest",
    "SimulationRequest",
    "SweepRequest",
    "VarietyRequest",
]
