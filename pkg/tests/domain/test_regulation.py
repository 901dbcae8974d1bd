"""Domain layer tests for channel rates and requisite variety.

Tests:
- Channel rates of the ship and general examples
- Verdicts, outcome floors and deficit ratios
- The entropy balance and the reconfiguration bound
"""

import math

import pytest

from domain.enums import TimeUnit
from domain.exceptions import DomainError, UnitMismatchError, ValidationError
from domain.regulation import (
    UNBOUNDED,
    ChannelRate,
    Rate,
    RegulationScenario,
    analyze,
    channel_entropy_rate,
    channel_rate_bits,
    entropy_balance,
    max_controllable_disturbance,
    max_reconfig_period,
    outcome_count_floor,
    requisite_variety_floor,
    sampling_heuristic_period,
)
from domain.variety_calculus import Distribution


def telegraph() -> ChannelRate:
    return ChannelRate("telegraph", 9, 1, 5, TimeUnit.SECOND)


def rudder() -> ChannelRate:
    return ChannelRate("rudder", 50, 1, 1, TimeUnit.SECOND)


def general() -> RegulationScenario:
    divisions = tuple(ChannelRate.from_bit_rate(f"division-{i}", 10**6, 1, TimeUnit.DAY) for i in range(10))
    signalers = tuple(ChannelRate(f"signaler-{i}", 4, 60 * 60 * 8, 1, TimeUnit.DAY) for i in range(10))
    return RegulationScenario(TimeUnit.DAY, divisions, signalers)


class TestChannelRates:
    """Test bits per time unit of regulator channels."""

    def test_telegraph(self) -> None:
        """Test nine telegraph positions every five seconds."""
        assert math.isclose(channel_rate_bits(telegraph()), 0.6339, abs_tol=1e-4)

    def test_rudder(self) -> None:
        """Test fifty rudder positions every second."""
        assert math.isclose(rudder().bits_per_unit, 5.6439, abs_tol=1e-4)

    def test_ship_can_control_at_most(self) -> None:
        """Test the two ship regulators together."""
        bound = max_controllable_disturbance([telegraph(), rudder()])
        assert math.isclose(bound, 6.2778, abs_tol=1e-4)

    def test_no_regulators_control_nothing(self) -> None:
        """Test an empty regulator set has zero capacity."""
        assert max_controllable_disturbance([]) == 0.0

    def test_single_state_carries_nothing(self) -> None:
        """Test a one-state channel has no capacity."""
        assert channel_rate_bits(ChannelRate("stuck", 1, 10, 1, TimeUnit.SECOND)) == 0.0

    def test_zero_states_rejected(self) -> None:
        """Test a channel needs at least one state."""
        with pytest.raises(DomainError):
            ChannelRate("broken", 0, 1, 1, TimeUnit.SECOND)

    def test_entropy_weighted_rate(self) -> None:
        """Test uneven signals carry their entropy, not log2 of the count."""
        rate = channel_entropy_rate(Distribution.of([0.5, 0.25, 0.25]), 4, 2)
        assert math.isclose(rate, 3.0, rel_tol=1e-12)

    def test_mixed_units_rejected(self) -> None:
        """Test regulators in different units cannot be summed."""
        hourly = ChannelRate("hourly", 4, 1, 1, TimeUnit.HOUR)
        with pytest.raises(UnitMismatchError):
            max_controllable_disturbance([rudder(), hourly])


class TestRate:
    """Test parsing of rates like 2/hour."""

    def test_parse(self) -> None:
        """Test value and unit are read."""
        assert Rate.parse("2/hour") == Rate(2.0, TimeUnit.HOUR)
        assert Rate.parse(" 0.5 / s ") == Rate(0.5, TimeUnit.SECOND)

    @pytest.mark.parametrize("text", ["2", "two/hour", "2/fortnight", "/hour"])
    def test_malformed(self, text: str) -> None:
        """Test malformed rates raise a validation error."""
        with pytest.raises(ValidationError):
            Rate.parse(text)

    def test_unit_aliases(self) -> None:
        """Test short, plural and capitalised unit labels."""
        assert TimeUnit.parse("s") is TimeUnit.SECOND
        assert TimeUnit.parse(" Hours ") is TimeUnit.HOUR

    def test_unknown_unit(self) -> None:
        """Test an unknown unit label is a domain validation error."""
        with pytest.raises(ValidationError, match="fortnight"):
            TimeUnit.parse("fortnight")


class TestAnalyze:
    """Test the requisite-variety verdict."""

    def test_general_is_grossly_undersized(self) -> None:
        """Test ten divisions against ten signalers."""
        verdict = analyze(general())
        assert verdict.total_disturbance == 10_000_000
        assert verdict.total_regulation == 576_000
        assert not verdict.controllable
        assert verdict.deficit_ratio is not None
        assert abs(verdict.deficit_ratio - 17.36) < 0.01
        assert verdict.outcome_floor == 10_000_000 - 576_000

    def test_sufficient_regulation(self) -> None:
        """Test a regulator at least as fast as the disturbance holds the floor at zero."""
        disturbance = ChannelRate("swell", 2, 5, 1, TimeUnit.SECOND)
        verdict = analyze(RegulationScenario(TimeUnit.SECOND, (disturbance,), (telegraph(), rudder())))
        assert verdict.controllable
        assert verdict.outcome_floor == 0.0
        assert verdict.deficit_ratio is not None and verdict.deficit_ratio < 1

    def test_no_regulation_has_no_ratio(self) -> None:
        """Test a scenario without regulators has an undefined deficit ratio."""
        verdict = analyze(RegulationScenario(TimeUnit.DAY, general().disturbances, ()))
        assert verdict.deficit_ratio is None
        assert not verdict.controllable

    def test_channel_unit_must_match_scenario(self) -> None:
        """Test channels per second in a per-day scenario are rejected."""
        with pytest.raises(UnitMismatchError):
            analyze(RegulationScenario(TimeUnit.DAY, (rudder(),), ()))


class TestFloors:
    """Test both forms of the law."""

    def test_log_floor(self) -> None:
        """Test the outcome floor is the uncovered disturbance."""
        assert requisite_variety_floor(10.0, 4.0) == 6.0
        assert requisite_variety_floor(4.0, 10.0) == 0.0

    def test_count_floor_rounds_up(self) -> None:
        """Test outcomes cannot number fewer than ceil(V_D / V_R)."""
        assert outcome_count_floor(10, 3) == 4
        assert outcome_count_floor(9, 3) == 3

    def test_negative_variety_rejected(self) -> None:
        """Test varieties are non-negative."""
        with pytest.raises(DomainError):
            requisite_variety_floor(-1.0, 1.0)


class TestReconfigBound:
    """Test the longest reconfiguration period the entropy budget allows."""

    def test_twenty_bits_against_two_per_hour(self) -> None:
        """Test 20 bits per move against 2 bits/hour gives 10 hours."""
        assert max_reconfig_period(20, 2, 1) == 10.0

    def test_margin_shortens_the_period(self) -> None:
        """Test a margin of two halves the period."""
        assert max_reconfig_period(20, 2, 2) == 5.0

    def test_no_disturbance_is_unbounded(self) -> None:
        """Test zero attacker rate puts no limit on the period."""
        assert max_reconfig_period(20, 0, 1) == UNBOUNDED

    def test_margin_below_one_rejected(self) -> None:
        """Test the margin cannot relax the bound."""
        with pytest.raises(DomainError):
            max_reconfig_period(20, 2, 0.5)

    def test_non_positive_entropy_rejected(self) -> None:
        """Test a move must inject entropy."""
        with pytest.raises(DomainError):
            max_reconfig_period(0, 2, 1)

    def test_balance_at_the_bound_is_zero(self) -> None:
        """Test moving exactly at the bound balances the disturbance."""
        period = max_reconfig_period(20, 2, 1)
        assert entropy_balance([2.0], [20 / period]) == 0.0

    def test_heuristic_halves_compromise_time(self) -> None:
        """Test moving twice as fast as the attacker compromises."""
        assert sampling_heuristic_period(8) == 4.0

    def test_negative_entropy_rate_rejected(self) -> None:
        """Test entropy rates are non-negative."""
        with pytest.raises(DomainError):
            entropy_balance([-1.0], [1.0])
