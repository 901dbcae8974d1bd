"""Errors raised while reading scenario files."""

from pathlib import Path
from typing import Optional


class ScenarioFileError(Exception):
    """Base class for scenario-file problems, carrying the file and location."""

    def __init__(self, message: str, path: Path, field: Optional[str] = None, line: Optional[int] = None) -> None:
        self.message = message
        self.path = path
        self.field = field
        self.line = line
        super().__init__(self.diagnostic)

    @property
    def diagnostic(self) -> str:
        location = str(self.path)
        if self.line is not None:
            location += f":{self.line}"
        if self.field:
            return f"{location}: {self.field}: {self.message}"
        return f"{location}: {self.message}"


class ScenarioFileNotFoundError(ScenarioFileError):
    """The scenario file does not exist or cannot be read."""


class ScenarioSchemaError(ScenarioFileError):
    """The document is not valid YAML or does not match the scenario schema."""


class ScenarioUnitError(ScenarioFileError):
    """A duration is missing its unit or uses a unit other than the one declared."""
