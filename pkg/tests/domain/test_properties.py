"""Seeded randomized property tests across the domain layer.

Every test draws its cases from a fixed-seed generator so failures reproduce.
"""

import math

import numpy as np
import pytest

from domain.durations import DurationDistribution
from domain.enums import ProcessKind, TimeUnit
from domain.mtd_process import ConfigSpace, ReconfigPolicy, generate_trajectory, is_member, memberships, observed_variety
from domain.regulation import (
    ChannelRate,
    RegulationScenario,
    analyze,
    entropy_balance,
    max_reconfig_period,
    requisite_variety_floor,
)
from domain.variety_calculus import (
    Alphabet,
    Distribution,
    SequenceSpace,
    SuccessorConstraint,
    brute_force_count,
    combined_variety,
    entropy_bits,
    variety_count,
)

CASES = 1_000
# Keeps each enumeration at a few thousand sequences.
ENUMERATION_CAP = 4_096


def random_space(rng: np.random.Generator) -> SequenceSpace:
    size = int(rng.integers(1, 6))
    max_length = max(n for n in range(1, 9) if size**n <= ENUMERATION_CAP) if size > 1 else 8
    length = int(rng.integers(1, max_length + 1))
    matrix = rng.random((size, size)) < rng.uniform(0.2, 0.9)
    alphabet = Alphabet.of(range(size))
    initial = None
    if rng.random() < 0.3:
        initial = frozenset(int(i) for i in rng.choice(size, size=int(rng.integers(1, size + 1)), replace=False))
    return SequenceSpace(alphabet, length, SuccessorConstraint.from_matrix(matrix.tolist()), initial)


def random_policy(rng: np.random.Generator) -> ReconfigPolicy:
    choice = int(rng.integers(4))
    if choice == 0:
        return ReconfigPolicy.stationary()
    if choice == 1:
        return ReconfigPolicy.periodic(float(rng.uniform(0.5, 10.0)))
    if choice == 2:
        return ReconfigPolicy.poly_periodic(float(rng.uniform(0.5, 5.0)), float(rng.uniform(5.5, 10.0)))
    return ReconfigPolicy.pseudo_random(DurationDistribution.exponential(float(rng.uniform(0.5, 10.0))))


@pytest.mark.property
class TestVarietyProperties:
    """Properties of variety and entropy."""

    def test_transfer_matrix_matches_enumeration(self) -> None:
        """Test 600 random successor constraints count the same both ways."""
        rng = np.random.default_rng(1)
        for case in range(600):
            space = random_space(rng)
            assert variety_count(space).count == brute_force_count(space), f"case {case}: {space}"

    @pytest.mark.slow
    def test_transfer_matrix_matches_enumeration_on_longer_sequences(self) -> None:
        """Test 3 to 5 symbols over lengths 6 to 8 count the same both ways."""
        rng = np.random.default_rng(9)
        for case in range(40):
            size = int(rng.integers(3, 6))
            length = int(rng.integers(6, 9))
            matrix = rng.random((size, size)) < rng.uniform(0.2, 0.9)
            space = SequenceSpace(Alphabet.of(range(size)), length, SuccessorConstraint.from_matrix(matrix.tolist()))
            assert variety_count(space).count == brute_force_count(space), f"case {case}: {space}"

    def test_removing_a_transition_never_adds_variety(self) -> None:
        """Test forbidding one more successor pair never raises the count."""
        rng = np.random.default_rng(10)
        for case in range(CASES):
            space = random_space(rng)
            assert space.constraint is not None
            allowed = [list(row) for row in space.constraint.allowed]
            permitted = [(i, j) for i, row in enumerate(allowed) for j, cell in enumerate(row) if cell]
            if not permitted:
                continue
            i, j = permitted[int(rng.integers(len(permitted)))]
            allowed[i][j] = False
            tighter = SequenceSpace(
                space.alphabet, space.length, SuccessorConstraint.from_matrix(allowed), space.initial_allowed
            )
            assert variety_count(tighter).count <= variety_count(space).count, f"case {case}: {space}"

    def test_entropy_bounds(self) -> None:
        """Test 0 <= H <= log2(k), with equality on the right only for uniform distributions."""
        rng = np.random.default_rng(2)
        for _ in range(CASES):
            k = int(rng.integers(1, 12))
            weights = rng.random(k)
            probabilities = weights / weights.sum()
            h = entropy_bits(Distribution.of(probabilities.tolist()))
            assert -1e-12 <= h <= math.log2(k) + 1e-9
            assert math.isclose(entropy_bits(Distribution.uniform(k)), math.log2(k), rel_tol=1e-9, abs_tol=1e-12)

    def test_bits_add_over_components(self) -> None:
        """Test the bits of a product are the sum of component bits."""
        rng = np.random.default_rng(3)
        for _ in range(CASES):
            counts = [int(c) for c in rng.integers(1, 10_000, size=int(rng.integers(1, 8)))]
            expected = sum(math.log2(c) for c in counts)
            assert math.isclose(combined_variety(counts).bits, expected, rel_tol=1e-9, abs_tol=1e-9)

    def test_regulator_requirement_grows_with_disturbance(self) -> None:
        """Test holding the outcome floor needs a regulator at least as large as the disturbance."""
        rng = np.random.default_rng(4)
        for _ in range(CASES):
            v_d, extra = (float(x) for x in rng.uniform(0.0, 1e6, size=2))
            v_r = float(rng.uniform(0.0, 1e6))
            assert requisite_variety_floor(v_d + extra, v_r) >= requisite_variety_floor(v_d, v_r)
            assert requisite_variety_floor(v_d, v_d) == 0.0


def random_channels(rng: np.random.Generator, label: str) -> tuple[ChannelRate, ...]:
    return tuple(
        ChannelRate(
            f"{label}{k}",
            int(rng.integers(1, 1_000)),
            float(rng.uniform(0.1, 1e4)),
            float(rng.uniform(0.1, 100.0)),
            TimeUnit.HOUR,
        )
        for k in range(int(rng.integers(0, 4)))
    )


@pytest.mark.property
class TestRegulationProperties:
    """Properties of the regulation bounds."""

    def test_floor_never_grows_with_regulator(self) -> None:
        """Test a larger regulator never raises the outcome floor."""
        rng = np.random.default_rng(11)
        for _ in range(CASES):
            v_d, v_r, extra = (float(x) for x in rng.uniform(0.0, 1e6, size=3))
            assert requisite_variety_floor(v_d, v_r + extra) <= requisite_variety_floor(v_d, v_r)

    def test_controllable_exactly_when_balance_non_negative(self) -> None:
        """Test the verdict agrees with the sign of the entropy balance."""
        rng = np.random.default_rng(12)
        for case in range(CASES):
            disturbances = random_channels(rng, "d")
            regulators = random_channels(rng, "r")
            verdict = analyze(RegulationScenario(TimeUnit.HOUR, disturbances, regulators))
            balance = entropy_balance([ch.bits_per_unit for ch in disturbances], [ch.bits_per_unit for ch in regulators])
            assert verdict.controllable == (balance >= 0), f"case {case}"

    def test_bound_spends_the_whole_move_budget(self) -> None:
        """Test the longest period times rate and margin gives back the entropy per move."""
        rng = np.random.default_rng(13)
        for _ in range(CASES):
            h_move = float(rng.uniform(0.01, 1e3))
            rate = float(rng.uniform(1e-3, 1e3))
            margin = float(rng.uniform(1.0, 10.0))
            period = max_reconfig_period(h_move, rate, margin)
            assert math.isclose(period * rate * margin, h_move, rel_tol=1e-9)


@pytest.mark.property
class TestTrajectoryProperties:
    """Properties of generated trajectories."""

    def test_trajectories_are_deterministic(self) -> None:
        """Test the same inputs give the same trajectory."""
        rng = np.random.default_rng(5)
        for case in range(CASES):
            policy = random_policy(rng)
            space = ConfigSpace(int(rng.integers(1, 50)))
            assert generate_trajectory(policy, space, 50.0, case) == generate_trajectory(policy, space, 50.0, case)

    def test_moves_are_genuine(self) -> None:
        """Test consecutive configurations differ whenever there is more than one."""
        rng = np.random.default_rng(6)
        for case in range(CASES):
            trajectory = generate_trajectory(random_policy(rng), ConfigSpace(int(rng.integers(2, 6))), 50.0, case)
            configs = [trajectory.origin] + [config for _, config in trajectory.events]
            assert all(a != b for a, b in zip(configs, configs[1:]))

    def test_observed_variety_bound(self) -> None:
        """Test a window sees at most min(M, 1 + moves in the window) configurations."""
        rng = np.random.default_rng(7)
        for case in range(CASES):
            size = int(rng.integers(1, 20))
            trajectory = generate_trajectory(random_policy(rng), ConfigSpace(size), 50.0, case)
            t0 = float(rng.uniform(0.0, 49.0))
            t1 = float(rng.uniform(t0 + 0.5, 50.0))
            moves = len(trajectory.events_in(t0, t1))
            assert observed_variety(trajectory, t0, t1).count <= min(size, 1 + moves)

    def test_process_classes_nest(self) -> None:
        """Test every policy's memberships are closed under the inclusion order."""
        rng = np.random.default_rng(8)
        for _ in range(CASES):
            classes = memberships(random_policy(rng))
            for inner in classes:
                assert all(outer in classes for outer in ProcessKind if is_member(inner, outer))
            assert ProcessKind.NON_STATIONARY in classes
