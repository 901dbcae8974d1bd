"""Pytest configuration and shared fixtures for all tests.

This module provides:
- Test configuration and markers
- Application settings for handler tests
- Scenario-file fixtures written to a temporary directory
"""

import os
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, Generator

import pytest
from _pytest.config import Config

# Add src to Python path for imports
src_path: Path = Path(__file__).parent.parent / "src"
if str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

# Import after path setup
from application.settings import Settings  # noqa: E402
from tests.fixtures.factories import ScenarioFileFactory  # noqa: E402

SCENARIO_DIR: Path = Path(__file__).parent / "fixtures" / "scenarios"

# ============================================================================
# PYTEST CONFIGURATION
# ============================================================================


def pytest_configure(config: Config) -> None:
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: Unit tests (fast, no external dependencies)")
    config.addinivalue_line("markers", "integration: Integration tests (files on disk, full CLI runs)")
    config.addinivalue_line("markers", "slow: Slow tests (may take several seconds)")
    config.addinivalue_line("markers", "asyncio: Async tests")
    config.addinivalue_line("markers", "command: Command handler tests")
    config.addinivalue_line("markers", "query: Query handler tests")
    config.addinivalue_line("markers", "property: Seeded randomized property tests")
    config.addinivalue_line("markers", "acceptance: Published figures and oracle checks")


# ============================================================================
# SETTINGS FIXTURES
# ============================================================================


@pytest.fixture
def test_settings() -> Settings:
    """Provide settings with fixed tool metadata so reports are comparable."""
    return Settings(app_name="Cyber Cycle", app_version="0.1.0-test", schema_version=1, default_seed=7)


# ============================================================================
# SCENARIO FILE FIXTURES
# ============================================================================


@pytest.fixture
def scenario_dir() -> Path:
    """Directory of the checked-in scenario files."""
    return SCENARIO_DIR


@pytest.fixture
def write_scenario(tmp_path: Path) -> Callable[..., Path]:
    """Write a scenario document (mapping or raw YAML text) to a temporary file."""

    def _write(content: Any, name: str = "scenario.yaml") -> Path:
        path: Path = tmp_path / name
        if isinstance(content, str):
            path.write_text(content, encoding="utf-8")
        else:
            path.write_text(ScenarioFileFactory.to_yaml(content), encoding="utf-8")
        return path

    return _write


# ============================================================================
# CLEANUP FIXTURES
# ============================================================================


@pytest.fixture(autouse=True)
def reset_environment() -> Generator[None, None, None]:
    """Reset environment variables after each test."""
    original_env: dict[str, str] = os.environ.copy()
    yield
    os.environ.clear()
    os.environ.update(original_env)
