"""Run sweep command with handler."""

import logging
from dataclasses import dataclass
from typing import Optional

from neuroglia.core import OperationResult
from neuroglia.mediation import Command, CommandHandler
from neuroglia.observability.tracing import add_span_attributes

from application.services.request_executor import RequestExecutor
from application.settings import Settings
from domain.exceptions import DomainError
from integration.models import ReportDto, ScenarioFile, SweepRequest

from .command_handler_base import CommandHandlerBase

log = logging.getLogger(__name__)


@dataclass
class RunSweepCommand(Command[OperationResult[ReportDto]]):
    """Command to execute only the sweep requests of a scenario file."""

    scenario: ScenarioFile
    seed: Optional[int] = None


class RunSweepCommandHandler(
    CommandHandlerBase,
    CommandHandler[RunSweepCommand, OperationResult[ReportDto]],
):
    """Handle parameter sweeps; a file without sweeps is a bad request."""

    def __init__(self, settings: Settings, executor: Optional[RequestExecutor] = None):
        super().__init__(settings, executor)

    async def handle_async(self, request: RunSweepCommand) -> OperationResult[ReportDto]:
        command = request
        sweeps = command.scenario.of_type(SweepRequest)
        if not sweeps:
            return self.bad_request(f"{command.scenario.path.name} declares no sweep request")

        seed = self.resolve_seed(command.scenario, command.seed)
        add_span_attributes({"scenario.source": str(command.scenario.path), "sweep.count": len(sweeps)})
        try:
            report = self.execute_all(command.scenario, sweeps, seed)
        except DomainError as e:
            log.warning("Sweep in %s failed: %s", command.scenario.path, e)
            return self.bad_request(str(e))
        return self.ok(report)
