"""Get worked examples query: recomputes the classic variety and regulation examples."""

import logging
from dataclasses import dataclass
from typing import Optional

from neuroglia.core import OperationResult
from neuroglia.mediation import Query, QueryHandler
from neuroglia.observability.tracing import add_span_attributes

from application.settings import Settings
from domain.enums import TimeUnit
from domain.regulation import ChannelRate, RegulationScenario, analyze, max_controllable_disturbance
from domain.variety_calculus import Alphabet, SequenceSpace, SuccessorConstraint, paper_closed_form, variety_count
from integration.models import ReportDto, ReportMetadata, ReportRow, ReportSection
from observability import worked_example_checks_failed

log = logging.getLogger(__name__)

BITS_TOLERANCE = 0.05
RATIO_TOLERANCE = 0.01
SEQUENCE_LENGTH = 10


@dataclass(frozen=True)
class ExpectedValue:
    description: str
    count: Optional[int] = None
    bits: Optional[float] = None
    value: Optional[float] = None
    tolerance: float = BITS_TOLERANCE
    verdict: Optional[str] = None


# The only place where the published figures appear; everything else is computed.
EXPECTED_WORKED_EXAMPLES: dict[str, ExpectedValue] = {
    "component_variety": ExpectedValue("variety of one four-state component", count=4, bits=2.0),
    "unconstrained_variety": ExpectedValue("ten four-state components", count=1_048_576, bits=20.0),
    "constrained_variety": ExpectedValue("ten components, neighbours differ by at most one", count=21_892, bits=14.4),
    "closed_form": ExpectedValue("closed form 2*F(21) for n = 10", count=21_892),
    "telegraph_rate": ExpectedValue("engine-room telegraph, bits/second", value=0.63),
    "rudder_rate": ExpectedValue("rudder positions, bits/second", value=5.64),
    "ship_bound": ExpectedValue("largest controllable disturbance, bits/second", value=6.3),
    "army_disturbance": ExpectedValue("ten divisions, bits/day", value=10_000_000, tolerance=0.0),
    "intelligence_channel": ExpectedValue("ten signalers, bits/day", value=576_000, tolerance=0.0),
    "deficit_ratio": ExpectedValue("disturbance over channel capacity", value=17.36, tolerance=RATIO_TOLERANCE),
    "verdict": ExpectedValue("can the general regulate", verdict="insufficient"),
}


def ship_regulators() -> tuple[ChannelRate, ChannelRate]:
    telegraph = ChannelRate("telegraph", states_per_signal=9, signals_per_period=1, period=5, unit=TimeUnit.SECOND)
    rudder = ChannelRate("rudder", states_per_signal=50, signals_per_period=1, period=1, unit=TimeUnit.SECOND)
    return telegraph, rudder


def general_scenario() -> RegulationScenario:
    divisions = tuple(ChannelRate.from_bit_rate(f"division-{i + 1}", 10**6, 1, TimeUnit.DAY) for i in range(10))
    # 60 letters a minute for 8 hours, 2 bits (four symbols) per letter.
    signalers = tuple(
        ChannelRate(f"signaler-{i + 1}", states_per_signal=4, signals_per_period=60 * 60 * 8, period=1, unit=TimeUnit.DAY)
        for i in range(10)
    )
    return RegulationScenario(TimeUnit.DAY, divisions, signalers)


@dataclass(frozen=True)
class ComputedValue:
    count: Optional[int] = None
    bits: Optional[float] = None
    value: Optional[float] = None
    verdict: Optional[str] = None


def compute_worked_examples() -> dict[str, ComputedValue]:
    alphabet = Alphabet.of("ABCD")
    component = variety_count(SequenceSpace(alphabet, 1))
    unconstrained = variety_count(SequenceSpace(alphabet, SEQUENCE_LENGTH))
    constrained = variety_count(SequenceSpace(alphabet, SEQUENCE_LENGTH, SuccessorConstraint.max_step(len(alphabet))))
    telegraph, rudder = ship_regulators()
    verdict = analyze(general_scenario())
    return {
        "component_variety": ComputedValue(count=component.count, bits=component.bits),
        "unconstrained_variety": ComputedValue(count=unconstrained.count, bits=unconstrained.bits),
        "constrained_variety": ComputedValue(count=constrained.count, bits=constrained.bits),
        "closed_form": ComputedValue(count=paper_closed_form(SEQUENCE_LENGTH)),
        "telegraph_rate": ComputedValue(value=telegraph.bits_per_unit),
        "rudder_rate": ComputedValue(value=rudder.bits_per_unit),
        "ship_bound": ComputedValue(value=max_controllable_disturbance([telegraph, rudder])),
        "army_disturbance": ComputedValue(value=verdict.total_disturbance),
        "intelligence_channel": ComputedValue(value=verdict.total_regulation),
        "deficit_ratio": ComputedValue(value=verdict.deficit_ratio),
        "verdict": ComputedValue(verdict="sufficient" if verdict.controllable else "insufficient"),
    }


def _close(actual: Optional[float], expected: float, tolerance: float) -> bool:
    return actual is not None and abs(actual - expected) <= tolerance


def check(expected: ExpectedValue, actual: ComputedValue) -> bool:
    if expected.count is not None and actual.count != expected.count:
        return False
    if expected.bits is not None and not _close(actual.bits, expected.bits, expected.tolerance):
        return False
    if expected.value is not None and not _close(actual.value, expected.value, expected.tolerance):
        return False
    if expected.verdict is not None and actual.verdict != expected.verdict:
        return False
    return True


def _expected_text(expected: ExpectedValue) -> str:
    parts = []
    if expected.count is not None:
        parts.append(str(expected.count))
    if expected.bits is not None:
        parts.append(f"{expected.bits} bits")
    if expected.value is not None:
        parts.append(f"{expected.value:g}")
    if expected.verdict is not None:
        parts.append(expected.verdict)
    return " / ".join(parts)


@dataclass
class GetWorkedExamplesQuery(Query[OperationResult[ReportDto]]):
    """Query to recompute the worked examples and compare them with their published values."""

    expected: Optional[dict[str, ExpectedValue]] = None


class GetWorkedExamplesQueryHandler(QueryHandler[GetWorkedExamplesQuery, OperationResult[ReportDto]]):
    """Handle the worked-example checks; mismatches are report content, flagged by ``passed``."""

    def __init__(self, settings: Settings):
        super().__init__()
        self.settings = settings

    async def handle_async(self, request: GetWorkedExamplesQuery) -> OperationResult[ReportDto]:
        expected_table = request.expected if request.expected is not None else EXPECTED_WORKED_EXAMPLES
        computed = compute_worked_examples()

        rows: list[ReportRow] = []
        for name, expected in expected_table.items():
            actual = computed.get(name)
            if actual is None:
                return self.bad_request(f"No worked example named '{name}'")
            passed = check(expected, actual)
            if not passed:
                log.warning("Worked example '%s' does not match %s", name, _expected_text(expected))
                worked_example_checks_failed.add(1, {"check": name})
            rows.append(
                {
                    "check": name,
                    "description": expected.description,
                    "count": actual.count,
                    "bits": round(actual.bits, 1) if actual.bits is not None else None,
                    "value": round(actual.value, 4) if actual.value is not None else None,
                    "verdict": actual.verdict,
                    "expected": _expected_text(expected),
                    "passed": passed,
                }
            )

        failures = sum(1 for row in rows if not row["passed"])
        add_span_attributes({"worked_examples.checks": len(rows), "worked_examples.failures": failures})
        metadata = ReportMetadata(
            tool=self.settings.app_name,
            tool_version=self.settings.app_version,
            schema_version=self.settings.schema_version,
        )
        section = ReportSection(name="worked-examples", kind="check", rows=rows)
        return self.ok(ReportDto(metadata=metadata, sections=[section], passed=failures == 0))
