"""Application layer command handler tests with strict type hints."""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest
from neuroglia.core import OperationResult

from application.commands import (
    RunScenarioFileCommand,
    RunScenarioFileCommandHandler,
    RunSweepCommand,
    RunSweepCommandHandler,
)
from application.services import RequestExecutor
from application.settings import Settings
from integration.models import ScenarioFile
from integration.services.scenario_loader import parse_scenario
from tests.fixtures.factories import ScenarioFileFactory
from tests.fixtures.mixins import BaseTestCase


class TestRunScenarioFileCommand(BaseTestCase):
    """Test RunScenarioFileCommand handler."""

    @pytest.fixture
    def handler(self, test_settings: Settings) -> RunScenarioFileCommandHandler:
        """Create a handler with a single-threaded executor."""
        return RunScenarioFileCommandHandler(test_settings, RequestExecutor(workers=1))

    @pytest.mark.asyncio
    async def test_general_regulation_report(self, handler: RunScenarioFileCommandHandler, scenario_dir: Path) -> None:
        """Test the general example runs and reports its deficit."""
        # Arrange
        scenario: ScenarioFile = parse_scenario(scenario_dir / "general.yaml")

        # Act
        result: OperationResult[Any] = await handler.handle_async(RunScenarioFileCommand(scenario))

        # Assert
        assert result.is_success
        assert result.status_code == 200
        report = result.data
        self.assert_dict_contains(
            self.only_row(report, "general"),
            {
                "disturbance_bits": 10_000_000,
                "regulation_bits": 576_000,
                "controllable": False,
                "deficit_ratio": 17.36,
                "verdict": "insufficient",
            },
        )
        self.assert_dict_contains(
            self.only_row(report, "reconfig-bound"),
            {"max_period": 10.0, "max_period_text": "10 hours", "heuristic_period_text": "4 hours"},
        )
        assert report.metadata.source == "general.yaml"
        assert report.metadata.scenario_digest == scenario.digest
        assert report.metadata.seeds == []

    @pytest.mark.asyncio
    async def test_sections_follow_declaration_order(
        self, handler: RunScenarioFileCommandHandler, scenario_dir: Path
    ) -> None:
        """Test one section per request, in file order, with the request kind."""
        scenario = parse_scenario(scenario_dir / "simulation.yaml")

        result: OperationResult[Any] = await handler.handle_async(RunScenarioFileCommand(scenario))

        assert result.is_success
        sections = result.data.sections
        assert [(s.name, s.kind) for s in sections] == [
            ("kiosk", "simulation"),
            ("pool", "simulation"),
            ("moving", "simulation"),
        ]
        # Four replications aggregate into one row; explicit seeds give one row each.
        assert len(sections[0].rows) == 1
        assert sections[0].rows[0]["runs"] == 4
        assert sections[0].rows[0]["strictly_immune"] is False
        assert [row["seed"] for row in sections[1].rows] == [1, 2]
        assert sections[2].rows[0]["seed"] == 3

    @pytest.mark.asyncio
    async def test_seeds_listed_in_order_of_first_use(
        self, handler: RunScenarioFileCommandHandler, scenario_dir: Path
    ) -> None:
        """Test report metadata lists every seed once."""
        scenario = parse_scenario(scenario_dir / "simulation.yaml")

        result: OperationResult[Any] = await handler.handle_async(RunScenarioFileCommand(scenario))

        # Kiosk replications from the file seed 3, then the pool's seeds 1 and 2.
        assert result.data.metadata.seeds == [3, 4, 5, 6, 1, 2]

    @pytest.mark.asyncio
    async def test_same_file_same_report(self, handler: RunScenarioFileCommandHandler, scenario_dir: Path) -> None:
        """Test two executions of the same file give equal reports."""
        scenario = parse_scenario(scenario_dir / "simulation.yaml")

        first: OperationResult[Any] = await handler.handle_async(RunScenarioFileCommand(scenario))
        second: OperationResult[Any] = await handler.handle_async(RunScenarioFileCommand(scenario))

        assert first.data == second.data

    @pytest.mark.asyncio
    async def test_constraint_admitting_nothing_still_reports(
        self, handler: RunScenarioFileCommandHandler, write_scenario: Callable[..., Path]
    ) -> None:
        """Test a space with no admissible sequence gives a zero-count row instead of a failure."""
        # Arrange
        request = ScenarioFileFactory.variety_request(
            length=3, max_step=None, alphabet=["A", "B"], successors=[[0, 0], [0, 0]]
        )
        scenario = parse_scenario(write_scenario(ScenarioFileFactory.document(request)))

        # Act
        result: OperationResult[Any] = await handler.handle_async(RunScenarioFileCommand(scenario))

        # Assert
        assert result.is_success
        row = self.only_row(result.data, "sequences")
        self.assert_dict_contains(
            row,
            {"count": 0, "bits": None, "reduction_bits": None, "unconstrained_count": 8, "unconstrained_bits": 3.0},
        )

    @pytest.mark.asyncio
    async def test_domain_failure_is_bad_request(
        self, handler: RunScenarioFileCommandHandler, write_scenario: Callable[..., Path]
    ) -> None:
        """Test an enumeration beyond the brute-force bound is a bad request."""
        document = ScenarioFileFactory.document(ScenarioFileFactory.variety_request(length=12, brute_force_check=True))
        scenario = parse_scenario(write_scenario(document))

        result: OperationResult[Any] = await handler.handle_async(RunScenarioFileCommand(scenario))

        assert not result.is_success
        assert result.status_code == 400


class TestSeedResolution(BaseTestCase):
    """Test which seed a run falls back to."""

    @pytest.fixture
    def handler(self, test_settings: Settings) -> RunScenarioFileCommandHandler:
        return RunScenarioFileCommandHandler(test_settings)

    def test_command_line_seed_wins(self, handler: RunScenarioFileCommandHandler, scenario_dir: Path) -> None:
        """Test an explicit seed overrides the file's seed."""
        assert handler.resolve_seed(parse_scenario(scenario_dir / "sweep.yaml"), 5) == 5

    def test_file_seed_next(self, handler: RunScenarioFileCommandHandler, scenario_dir: Path) -> None:
        """Test the file's seed is used when none is given."""
        assert handler.resolve_seed(parse_scenario(scenario_dir / "sweep.yaml"), None) == 11

    def test_settings_seed_last(self, handler: RunScenarioFileCommandHandler, scenario_dir: Path) -> None:
        """Test the configured default applies when the file has no seed."""
        assert handler.resolve_seed(parse_scenario(scenario_dir / "general.yaml"), None) == 7


class TestRunSweepCommand(BaseTestCase):
    """Test RunSweepCommand handler."""

    @pytest.fixture
    def handler(self, test_settings: Settings) -> RunSweepCommandHandler:
        """Create a handler with two worker threads."""
        return RunSweepCommandHandler(test_settings, RequestExecutor(workers=2))

    @pytest.mark.asyncio
    async def test_only_sweeps_are_executed(self, handler: RunSweepCommandHandler, scenario_dir: Path) -> None:
        """Test the variety request of the file is skipped."""
        scenario = parse_scenario(scenario_dir / "sweep.yaml")

        result: OperationResult[Any] = await handler.handle_async(RunSweepCommand(scenario))

        assert result.is_success
        assert result.status_code == 200
        assert [s.name for s in result.data.sections] == ["period-sweep"]

    @pytest.mark.asyncio
    async def test_period_sweep_rows(self, handler: RunSweepCommandHandler, scenario_dir: Path) -> None:
        """Test one row per period, with immunity below the development time."""
        scenario = parse_scenario(scenario_dir / "sweep.yaml")

        result: OperationResult[Any] = await self.await_with_timeout(
            handler.handle_async(RunSweepCommand(scenario)), timeout=120.0
        )

        rows = self.section(result.data, "period-sweep").rows
        self.assert_list_length(rows, 4)
        assert [row["value"] for row in rows] == [2.0, 3.0, 6.0, 8.0]
        assert [row["compromise_probability_mean"] for row in rows] == [0.0, 0.0, 1.0, 1.0]
        assert all(row["runs"] == 20 and row["unit"] == "hour" for row in rows)
        assert result.data.metadata.seeds == list(range(100, 120))

    @pytest.mark.asyncio
    async def test_file_without_sweeps_is_bad_request(self, handler: RunSweepCommandHandler, scenario_dir: Path) -> None:
        """Test a file declaring no sweep is rejected."""
        scenario = parse_scenario(scenario_dir / "general.yaml")

        result: OperationResult[Any] = await handler.handle_async(RunSweepCommand(scenario))

        assert not result.is_success
        assert result.status_code == 400
