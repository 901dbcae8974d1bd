"""Test fixtures package."""

from .factories import AttackerFactory, DefenderFactory, ScenarioFactory, ScenarioFileFactory

__all__ = ["AttackerFactory", "DefenderFactory", "ScenarioFactory", "ScenarioFileFactory"]
