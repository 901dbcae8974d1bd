import logging
from typing import Any, Optional

from neuroglia.utils import CamelModel

log = logging.getLogger(__name__)

ReportRow = dict[str, Any]


class ReportMetadata(CamelModel):
    tool: str
    """The name of the tool that produced the report."""

    tool_version: str
    """The version of the tool that produced the report."""

    schema_version: int
    """The version of the scenario-file and report schemas."""

    source: Optional[str] = None
    """The scenario file the report was computed from, if any."""

    scenario_digest: Optional[str] = None
    """The SHA-256 digest of the scenario file content."""

    seeds: list[int] = []
    """Every seed used by the simulations of the report, in order of first use."""


class ReportSection(CamelModel):
    name: str
    """The name of the request that produced the section."""

    kind: str
    """The request kind (variety, regulation, simulation, ...)."""

    rows: list[ReportRow] = []
    """The result rows; every row is a flat mapping of column to scalar."""


class ReportDto(CamelModel):
    metadata: ReportMetadata
    """Run metadata."""

    sections: list[ReportSection] = []
    """One section per executed request, in declaration order."""

    passed: bool = True
    """False when a comparison against expected values failed."""
