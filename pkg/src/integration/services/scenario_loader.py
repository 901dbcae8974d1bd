"""Reading, validating and converting YAML scenario files.

Parsing happens in three phases: YAML, the pydantic schema, and conversion to
domain values. Each phase reports its first error with the dotted field path
and the line it occurs on. No unit conversion is done anywhere: every duration
of a request must be written in the time unit that request declares.
"""

import contextlib
import hashlib
import logging
import re
from collections.abc import Iterator, Sequence
from dataclasses import replace
from pathlib import Path
from typing import NoReturn, Optional, Union

import yaml
from pydantic import ValidationError as SchemaValidationError

from domain.durations import DurationDistribution
from domain.enums import SweepParameter, TimeUnit
from domain.exceptions import DomainError
from domain.mtd_process import ConfigSpace, ReconfigPolicy
from domain.regulation import ChannelRate, Rate, RegulationScenario
from domain.simulation import AttackerModel, DefenderModel, Scenario, attacker_variant, kiosk_scenario, mtd_pool_scenario
from domain.variety_calculus import Alphabet, Distribution, SequenceSpace, SuccessorConstraint
from integration.exceptions import ScenarioFileError, ScenarioFileNotFoundError, ScenarioSchemaError, ScenarioUnitError
from integration.models.scenario_file import (
    AttackerSpecModel,
    BoundRequestModel,
    ChannelModel,
    DefenderSpecModel,
    DurationModel,
    DurationSpec,
    DurationText,
    EntropyRequestModel,
    PolicyModel,
    RegulationRequestModel,
    RequestEntryModel,
    ScenarioDocument,
    SimulationRequestModel,
    SimulationSpecModel,
    SweepRequestModel,
    VarietyRequestModel,
)
from integration.models.scenario_requests import (
    BoundRequest,
    EntropyRequest,
    RegulationRequest,
    ScenarioFile,
    ScenarioRequest,
    SimulationRequest,
    SweepRequest,
    VarietyRequest,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

Location = tuple[Union[str, int], ...]

_DURATION_PATTERN = re.compile(r"^\s*([-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z]+)?\s*$")


def _child(node: Optional[yaml.Node], key: Union[str, int]) -> Optional[yaml.Node]:
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            if key_node.value == str(key):
                return value_node
    elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and 0 <= key < len(node.value):
        return node.value[key]
    return None


def _key_node(node: Optional[yaml.Node], key: Union[str, int]) -> Optional[yaml.Node]:
    if isinstance(node, yaml.MappingNode):
        for key_node, _ in node.value:
            if key_node.value == str(key):
                return key_node
    return None


def locate(root: Optional[yaml.Node], loc: Location) -> tuple[str, Optional[int]]:
    """Dotted field path and 1-based line for a schema location.

    Location parts that do not exist in the document (union member names) are
    skipped, except the last one, which names a missing or unknown field.
    """
    parts: list[str] = []
    node = root
    line = root.start_mark.line + 1 if root is not None else None
    for position, key in enumerate(loc):
        last = position == len(loc) - 1
        child = _child(node, key)
        if child is None and not last:
            continue
        parts.append(f"[{key}]" if isinstance(key, int) else f".{key}")
        if child is not None:
            key_node = _key_node(node, key) if last else None
            line = (key_node or child).start_mark.line + 1
            node = child
    return "".join(parts).lstrip("."), line


class _ScenarioConverter:
    """Turns a validated document into domain requests, tracking field locations."""

    def __init__(self, path: Path, root: Optional[yaml.Node]) -> None:
        self.path = path
        self.root = root

    def fail(self, error_type: type[ScenarioFileError], message: str, loc: Location) -> NoReturn:
        field, line = locate(self.root, loc)
        raise error_type(message, self.path, field, line)

    @contextlib.contextmanager
    def at(self, loc: Location) -> Iterator[None]:
        try:
            yield
        except DomainError as e:
            self.fail(ScenarioSchemaError, str(e), loc)

    def time_unit(self, label: str, loc: Location) -> TimeUnit:
        try:
            return TimeUnit.parse(label)
        except DomainError as e:
            self.fail(ScenarioUnitError, str(e), loc)

    def timed(self, value: DurationText, loc: Location) -> tuple[float, TimeUnit]:
        if not isinstance(value, str):
            self.fail(ScenarioUnitError, f"Duration {value} has no unit; write it as '{value} <unit>'", loc)
        match = _DURATION_PATTERN.match(value)
        if match is None:
            self.fail(ScenarioSchemaError, f"'{value}' is not a duration like '10 hour'", loc)
        if match.group(2) is None:
            self.fail(ScenarioUnitError, f"Duration '{value}' has no unit", loc)
        amount = float(match.group(1))
        if amount < 0:
            self.fail(ScenarioSchemaError, f"Duration '{value}' must not be negative", loc)
        return amount, self.time_unit(match.group(2), loc)

    def duration(self, value: DurationText, unit: TimeUnit, loc: Location) -> float:
        amount, found = self.timed(value, loc)
        if found != unit:
            self.fail(ScenarioUnitError, f"'{value}' is in {found.plural()} but the request uses {unit.plural()}", loc)
        return amount

    def rate(self, text: str, unit: Optional[TimeUnit], loc: Location) -> Rate:
        try:
            rate = Rate.parse(text)
        except DomainError as e:
            self.fail(ScenarioUnitError, str(e), loc)
        if unit is not None and rate.unit != unit:
            self.fail(ScenarioUnitError, f"Rate '{text}' is per {rate.unit.value} but the request uses {unit.plural()}", loc)
        return rate

    def distribution(self, spec: DurationSpec, unit: TimeUnit, loc: Location) -> DurationDistribution:
        if isinstance(spec, DurationModel):
            mean = self.duration(spec.mean, unit, loc + ("mean",))
            spread = self.duration(spec.spread, unit, loc + ("spread",)) if spec.spread is not None else 0.0
            with self.at(loc):
                return DurationDistribution(spec.kind, mean, spread)
        return DurationDistribution.constant(self.duration(spec, unit, loc))

    def request(self, entry: RequestEntryModel, index: int) -> ScenarioRequest:
        kind = entry.kind
        loc: Location = ("requests", index, kind)
        model = getattr(entry, kind)
        name = model.name or f"{kind}-{index + 1}"
        if isinstance(model, VarietyRequestModel):
            return self.variety(name, model, loc)
        if isinstance(model, EntropyRequestModel):
            return self.entropy(name, model, loc)
        if isinstance(model, RegulationRequestModel):
            return self.regulation(name, model, loc)
        if isinstance(model, BoundRequestModel):
            return self.bound(name, model, loc)
        if isinstance(model, SimulationRequestModel):
            return self.simulation(name, model, loc)
        return self.sweep(name, model, loc)

    def variety(self, name: str, model: VarietyRequestModel, loc: Location) -> VarietyRequest:
        with self.at(loc):
            symbols: Sequence[Union[str, int]] = (
                model.alphabet if model.alphabet is not None else list(range(model.alphabet_size or 0))
            )
            alphabet = Alphabet.of(symbols)
            constraint: Optional[SuccessorConstraint] = None
            if model.max_step is not None:
                constraint = SuccessorConstraint.max_step(len(alphabet), model.max_step)
            elif model.successors is not None:
                constraint = SuccessorConstraint.from_matrix(model.successors)
            initial = frozenset(model.initial) if model.initial is not None else None
            space = SequenceSpace(alphabet, model.length, constraint, initial)
        return VarietyRequest(name, space, model.brute_force_check)

    def entropy(self, name: str, model: EntropyRequestModel, loc: Location) -> EntropyRequest:
        with self.at(loc + ("probabilities",)):
            distribution = Distribution.of(model.probabilities)
        if model.per is None:
            return EntropyRequest(name, distribution)
        period, unit = self.timed(model.per, loc + ("per",))
        return EntropyRequest(name, distribution, model.signals, period, unit)

    def channels(self, models: list[ChannelModel], unit: TimeUnit, loc: Location) -> tuple[ChannelRate, ...]:
        channels: list[ChannelRate] = []
        for i, model in enumerate(models):
            period = self.duration(model.per, unit, loc + (i, "per"))
            with self.at(loc + (i,)):
                if model.bits is not None:
                    channel = ChannelRate.from_bit_rate(model.label, model.bits, period, unit)
                else:
                    channel = ChannelRate(model.label, model.states or 1, model.signals, period, unit)
            channels.extend([channel] * model.count)
        return tuple(channels)

    def regulation(self, name: str, model: RegulationRequestModel, loc: Location) -> RegulationRequest:
        unit = self.time_unit(model.time_unit, loc + ("time_unit",))
        disturbances = self.channels(model.disturbances, unit, loc + ("disturbances",))
        regulators = self.channels(model.regulators, unit, loc + ("regulators",))
        return RegulationRequest(name, RegulationScenario(unit, disturbances, regulators))

    def bound(self, name: str, model: BoundRequestModel, loc: Location) -> BoundRequest:
        rate = self.rate(model.rate, None, loc + ("rate",))
        compromise_time = None
        if model.compromise_time is not None:
            compromise_time = self.duration(model.compromise_time, rate.unit, loc + ("compromise_time",))
        return BoundRequest(name, model.h_move, rate, model.margin, compromise_time)

    def attacker(self, model: AttackerSpecModel, unit: TimeUnit, loc: Location) -> AttackerModel:
        scan_interval = self.duration(model.scan_interval, unit, loc + ("scan_interval",))
        dev_time = self.distribution(model.exploit_dev_time, unit, loc + ("exploit_dev_time",))
        with self.at(loc):
            attacker = AttackerModel(
                scan_interval=scan_interval,
                exploit_dev_time=dev_time,
                retry=model.retry,
                mismatch_success_prob=model.mismatch_success_prob,
                bypass_prob=model.bypass_prob,
                arrivals=model.arrivals,
            )
            if model.variant is not None:
                attacker = attacker_variant(model.variant, attacker, model.variant_strength)
        return attacker

    def policy(self, model: PolicyModel, unit: TimeUnit, loc: Location) -> ReconfigPolicy:
        periods = tuple(self.duration(p, unit, loc + ("periods", i)) for i, p in enumerate(model.periods))
        interval = self.distribution(model.interval, unit, loc + ("interval",)) if model.interval else None
        with self.at(loc):
            return ReconfigPolicy(model.kind, periods, interval)

    def defender(self, model: DefenderSpecModel, unit: TimeUnit, loc: Location) -> DefenderModel:
        policy = self.policy(model.policy, unit, loc + ("policy",))
        detection_delay = DurationDistribution.constant(0.0)
        if model.detection_delay is not None:
            detection_delay = self.distribution(model.detection_delay, unit, loc + ("detection_delay",))
        reset_latency = 1.0
        if model.reset_latency is not None:
            reset_latency = self.duration(model.reset_latency, unit, loc + ("reset_latency",))
        with self.at(loc):
            return DefenderModel(
                space=ConfigSpace(model.configs, model.per_move_entropy),
                policy=policy,
                detection_prob=model.detection_prob,
                detection_delay=detection_delay,
                reset_latency=reset_latency,
                persistence_prob=model.persistence_prob,
                input_filter_prob=model.input_filter_prob,
                allow_same_config=model.allow_same_config,
            )

    def scenario(self, name: str, model: SimulationSpecModel, loc: Location) -> tuple[Scenario, TimeUnit]:
        unit = self.time_unit(model.time_unit, loc + ("time_unit",))
        horizon = self.duration(model.horizon, unit, loc + ("horizon",))

        if model.kiosk is not None:
            kiosk = model.kiosk
            kiosk_loc = loc + ("kiosk",)
            delay = self.distribution(kiosk.detection_delay, unit, kiosk_loc + ("detection_delay",))
            latency = self.duration(kiosk.reset_latency, unit, kiosk_loc + ("reset_latency",))
            rate = self.rate(kiosk.attack_rate, unit, kiosk_loc + ("attack_rate",))
            with self.at(kiosk_loc):
                scenario = kiosk_scenario(
                    kiosk.detection_prob, delay, latency, kiosk.persistence_prob, rate.value, horizon=horizon
                )
        elif model.mtd_pool is not None:
            pool = model.mtd_pool
            pool_loc = loc + ("mtd_pool",)
            reset_period = None
            if pool.reset_period is not None:
                reset_period = self.duration(pool.reset_period, unit, pool_loc + ("reset_period",))
            attacker = self.attacker(pool.attacker, unit, pool_loc + ("attacker",)) if pool.attacker else None
            with self.at(pool_loc):
                scenario = mtd_pool_scenario(pool.pool_size, pool.configs, reset_period, attacker, horizon=horizon)
        else:
            assert model.attacker is not None and model.defender is not None
            attacker = self.attacker(model.attacker, unit, loc + ("attacker",))
            defender = self.defender(model.defender, unit, loc + ("defender",))
            pool_reset_period = None
            if model.pool_reset_period is not None:
                pool_reset_period = self.duration(model.pool_reset_period, unit, loc + ("pool_reset_period",))
            with self.at(loc):
                scenario = Scenario(
                    attacker,
                    defender,
                    horizon,
                    pool_size=model.pool_size,
                    invalidation=model.invalidation,
                    pool_reset_period=pool_reset_period,
                )
        return replace(scenario, label=name), unit

    def simulation(self, name: str, model: SimulationRequestModel, loc: Location) -> SimulationRequest:
        scenario, unit = self.scenario(name, model, loc)
        seeds = tuple(model.seeds) if model.seeds is not None else None
        return SimulationRequest(name, scenario, unit, seeds, model.replications, model.base_seed)

    def sweep(self, name: str, model: SweepRequestModel, loc: Location) -> SweepRequest:
        template, unit = self.scenario(name, model.scenario, loc + ("scenario",))
        values: list[float] = []
        for i, value in enumerate(model.values):
            value_loc = loc + ("values", i)
            if model.parameter == SweepParameter.RECONFIG_PERIOD:
                values.append(self.duration(value, unit, value_loc))
                continue
            try:
                values.append(float(value))
            except ValueError:
                self.fail(ScenarioSchemaError, f"'{value}' is not a number", value_loc)
        return SweepRequest(name, template, unit, model.parameter, tuple(values), model.replications, model.base_seed)


def parse_scenario(path: Union[str, Path], schema_version: int = SCHEMA_VERSION) -> ScenarioFile:
    """Read and validate a scenario file.

    Raises:
        ScenarioFileNotFoundError: the file is missing or unreadable.
        ScenarioSchemaError: the YAML or the schema is violated.
        ScenarioUnitError: a duration lacks a unit or uses the wrong one.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioFileNotFoundError(f"Cannot read scenario file ({e.strerror or e})", path) from e

    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise ScenarioSchemaError(f"Invalid YAML: {getattr(e, 'problem', None) or e}", path, line=line) from e
    if not isinstance(data, dict):
        raise ScenarioSchemaError("The document must be a mapping with a 'requests' list", path, line=1)

    try:
        document = ScenarioDocument.model_validate(data)
    except SchemaValidationError as e:
        error = e.errors()[0]
        field, line = locate(root, tuple(error["loc"]))
        raise ScenarioSchemaError(error["msg"], path, field, line) from e

    converter = _ScenarioConverter(path, root)
    if document.version != schema_version:
        converter.fail(
            ScenarioSchemaError, f"Unsupported schema version {document.version}, expected {schema_version}", ("version",)
        )
    requests = tuple(converter.request(entry, i) for i, entry in enumerate(document.requests))
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    log.info("Parsed scenario file %s with %d request(s)", path, len(requests))
    return ScenarioFile(path=path, digest=digest, version=document.version, requests=requests, seed=document.seed)
