import logging
from collections.abc import Iterable
from typing import Optional

from application.services.request_executor import RequestExecutor
from application.settings import Settings
from integration.models import ReportDto, ReportMetadata, ReportSection, ScenarioFile, ScenarioRequest

log = logging.getLogger(__name__)


class CommandHandlerBase:
    """Represents the base class for the handlers that execute scenario-file requests."""

    settings: Settings
    """ Gets the application settings (tool version, schema version, default seed) """

    executor: RequestExecutor
    """ Gets the service used to execute individual requests """

    def __init__(self, settings: Settings, executor: Optional[RequestExecutor] = None):
        self.settings = settings
        self.executor = executor or RequestExecutor(workers=settings.sweep_workers)

    def resolve_seed(self, scenario: ScenarioFile, seed: Optional[int]) -> int:
        """Seed given on the command line, else the file's ``seed``, else the configured default."""
        if seed is not None:
            return seed
        if scenario.seed is not None:
            return scenario.seed
        return self.settings.default_seed

    def build_metadata(self, scenario: Optional[ScenarioFile], seeds: Iterable[int]) -> ReportMetadata:
        unique: dict[int, None] = dict.fromkeys(seeds)
        return ReportMetadata(
            tool=self.settings.app_name,
            tool_version=self.settings.app_version,
            schema_version=self.settings.schema_version,
            source=scenario.path.name if scenario is not None else None,
            scenario_digest=scenario.digest if scenario is not None else None,
            seeds=list(unique),
        )

    def execute_all(self, scenario: ScenarioFile, requests: Iterable[ScenarioRequest], seed: int) -> ReportDto:
        """Execute ``requests`` in order and assemble the report."""
        sections: list[ReportSection] = []
        seeds: list[int] = []
        for request in requests:
            section, used = self.executor.execute(request, seed)
            sections.append(section)
            seeds.extend(used)
        return ReportDto(metadata=self.build_metadata(scenario, seeds), sections=sections)
