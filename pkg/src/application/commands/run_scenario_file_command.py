"""Run scenario file command with handler."""

import logging
import time
from dataclasses import dataclass
from typing import Optional

from neuroglia.core import OperationResult
from neuroglia.mediation import Command, CommandHandler
from neuroglia.observability.tracing import add_span_attributes
from opentelemetry import trace

from application.services.request_executor import RequestExecutor
from application.settings import Settings
from domain.exceptions import DomainError
from integration.models import ReportDto, ScenarioFile

from .command_handler_base import CommandHandlerBase

log = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)


@dataclass
class RunScenarioFileCommand(Command[OperationResult[ReportDto]]):
    """Command to execute every request of a parsed scenario file."""

    scenario: ScenarioFile
    seed: Optional[int] = None


class RunScenarioFileCommandHandler(
    CommandHandlerBase,
    CommandHandler[RunScenarioFileCommand, OperationResult[ReportDto]],
):
    """Handle execution of a whole scenario file, in declaration order."""

    def __init__(self, settings: Settings, executor: Optional[RequestExecutor] = None):
        super().__init__(settings, executor)

    async def handle_async(self, request: RunScenarioFileCommand) -> OperationResult[ReportDto]:
        command = request
        start_time = time.time()
        seed = self.resolve_seed(command.scenario, command.seed)

        add_span_attributes(
            {
                "scenario.source": str(command.scenario.path),
                "scenario.requests": len(command.scenario.requests),
                "scenario.seed": seed,
            }
        )

        with tracer.start_as_current_span("run_scenario_file"):
            try:
                report = self.execute_all(command.scenario, command.scenario.requests, seed)
            except DomainError as e:
                log.warning("Scenario %s failed: %s", command.scenario.path, e)
                return self.bad_request(str(e))

        log.info(
            "Executed %d request(s) from %s in %.1f ms",
            len(report.sections),
            command.scenario.path,
            (time.time() - start_time) * 1000,
        )
        return self.ok(report)
