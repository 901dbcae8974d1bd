"""Application commands package."""

from .command_handler_base import CommandHandlerBase
from .run_scenario_file_command import RunScenarioFileCommand, RunScenarioFileCommandHandler
from .run_sweep_command import RunSweepCommand, RunSweepCommandHandler

__all__ = [
    "CommandHandlerBase",
    "RunScenarioFileCommand",
    "RunScenarioFileCommandHandler",
    "RunSweepCommand",
    "RunSweepCommandHandler",
]
