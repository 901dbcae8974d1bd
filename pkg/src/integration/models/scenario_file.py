"""Schema of YAML scenario files.

Durations are written as ``"<number> <unit>"`` (``"10 hour"``, ``"5 s"``) and
rates as ``"<number>/<unit>"`` (``"2/hour"``). Bare numbers are accepted by the
schema so that the loader can report them as unit errors rather than type errors.
"""

from typing import Annotated, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from domain.enums import ArrivalProcess, AttackVariant, DistributionKind, InvalidationMode, PolicyKind, SweepParameter

Probability = Annotated[float, Field(ge=0.0, le=1.0)]
DurationText = Union[str, float]
Symbol = Union[str, int]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _exactly_one(model: BaseModel, names: tuple[str, ...], what: str) -> None:
    present = [name for name in names if getattr(model, name) is not None]
    if len(present) != 1:
        raise ValueError(f"{what} must set exactly one of {', '.join(names)}; got {present or 'none'}")


class VarietyRequestModel(StrictModel):
    name: Optional[str] = None
    alphabet: Optional[list[Symbol]] = Field(default=None, min_length=1)
    alphabet_size: Optional[int] = Field(default=None, ge=1)
    length: int = Field(ge=1)
    max_step: Optional[int] = Field(default=None, ge=0)
    successors: Optional[list[list[int]]] = None
    initial: Optional[list[Symbol]] = None
    brute_force_check: bool = False

    @model_validator(mode="after")
    def check_alphabet(self) -> "VarietyRequestModel":
        _exactly_one(self, ("alphabet", "alphabet_size"), "A variety request")
        if self.max_step is not None and self.successors is not None:
            raise ValueError("max_step and successors are mutually exclusive")
        return self


class EntropyRequestModel(StrictModel):
    name: Optional[str] = None
    probabilities: list[float] = Field(min_length=1)
    signals: Optional[float] = Field(default=None, gt=0)
    per: Optional[DurationText] = None

    @model_validator(mode="after")
    def check_rate(self) -> "EntropyRequestModel":
        if (self.signals is None) != (self.per is None):
            raise ValueError("signals and per must be given together")
        return self


class ChannelModel(StrictModel):
    label: str
    states: Optional[int] = Field(default=None, ge=1)
    bits: Optional[int] = Field(default=None, ge=1)
    signals: float = Field(default=1.0, gt=0)
    per: DurationText
    count: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def check_capacity(self) -> "ChannelModel":
        _exactly_one(self, ("states", "bits"), f"Channel '{self.label}'")
        return self


class RegulationRequestModel(StrictModel):
    name: Optional[str] = None
    time_unit: str
    disturbances: list[ChannelModel] = Field(default_factory=list)
    regulators: list[ChannelModel] = Field(default_factory=list)


class BoundRequestModel(StrictModel):
    name: Optional[str] = None
    h_move: float = Field(gt=0)
    rate: str
    margin: float = Field(default=1.0, ge=1.0)
    compromise_time: Optional[DurationText] = None


class DurationModel(StrictModel):
    kind: DistributionKind = DistributionKind.CONSTANT
    mean: DurationText
    spread: Optional[DurationText] = None


DurationSpec = Union[DurationModel, DurationText]


class PolicyModel(StrictModel):
    kind: PolicyKind = PolicyKind.STATIONARY
    periods: list[DurationText] = Field(default_factory=list)
    interval: Optional[DurationModel] = None


class AttackerSpecModel(StrictModel):
    scan_interval: DurationText
    exploit_dev_time: DurationSpec
    retry: bool = True
    mismatch_success_prob: Probability = 0.0
    bypass_prob: Probability = 0.0
    arrivals: ArrivalProcess = ArrivalProcess.PERIODIC_SCAN
    variant: Optional[AttackVariant] = None
    variant_strength: Probability = 0.5


class DefenderSpecModel(StrictModel):
    configs: int = Field(default=1, ge=1)
    per_move_entropy: Optional[float] = Field(default=None, ge=0)
    policy: PolicyModel = Field(default_factory=PolicyModel)
    detection_prob: Probability = 0.0
    detection_delay: Optional[DurationSpec] = None
    reset_latency: Optional[DurationText] = None
    persistence_prob: Probability = 0.0
    input_filter_prob: Probability = 0.0
    allow_same_config: bool = False


class KioskPresetModel(StrictModel):
    detection_prob: Probability
    detection_delay: DurationSpec
    reset_latency: DurationText
    persistence_prob: Probability = 0.0
    attack_rate: str


class MtdPoolPresetModel(StrictModel):
    pool_size: int = Field(ge=1)
    configs: int = Field(ge=1)
    reset_period: Optional[DurationText] = None
    attacker: Optional[AttackerSpecModel] = None


class SimulationSpecModel(StrictModel):
    name: Optional[str] = None
    time_unit: str
    horizon: DurationText
    kiosk: Optional[KioskPresetModel] = None
    mtd_pool: Optional[MtdPoolPresetModel] = None
    attacker: Optional[AttackerSpecModel] = None
    defender: Optional[DefenderSpecModel] = None
    pool_size: int = Field(default=1, ge=1)
    invalidation: InvalidationMode = InvalidationMode.STRICT_EPOCH
    pool_reset_period: Optional[DurationText] = None

    @model_validator(mode="after")
    def check_shape(self) -> "SimulationSpecModel":
        presets = [name for name in ("kiosk", "mtd_pool") if getattr(self, name) is not None]
        custom = self.attacker is not None or self.defender is not None
        if len(presets) > 1 or (presets and custom):
            raise ValueError("A simulation uses either one preset (kiosk, mtd_pool) or attacker and defender")
        if not presets and (self.attacker is None or self.defender is None):
            raise ValueError("A simulation without a preset needs both attacker and defender")
        return self


class SimulationRequestModel(SimulationSpecModel):
    seeds: Optional[list[int]] = Field(default=None, min_length=1)
    replications: Optional[int] = Field(default=None, ge=1)
    base_seed: Optional[int] = None

    @model_validator(mode="after")
    def check_seeds(self) -> "SimulationRequestModel":
        if self.seeds is not None and (self.replications is not None or self.base_seed is not None):
            raise ValueError("seeds cannot be combined with replications or base_seed")
        return self


class SweepRequestModel(StrictModel):
    name: Optional[str] = None
    scenario: SimulationSpecModel
    parameter: SweepParameter
    values: list[DurationText] = Field(min_length=1)
    replications: int = Field(default=1, ge=1)
    base_seed: Optional[int] = None


class RequestEntryModel(StrictModel):
    variety: Optional[VarietyRequestModel] = None
    entropy: Optional[EntropyRequestModel] = None
    regulation: Optional[RegulationRequestModel] = None
    bound: Optional[BoundRequestModel] = None
    simulation: Optional[SimulationRequestModel] = None
    sweep: Optional[SweepRequestModel] = None

    @model_validator(mode="after")
    def check_single_kind(self) -> "RequestEntryModel":
        _exactly_one(self, REQUEST_KINDS, "A request")
        return self

    @property
    def kind(self) -> str:
        return next(name for name in REQUEST_KINDS if getattr(self, name) is not None)


REQUEST_KINDS: tuple[str, ...] = ("variety", "entropy", "regulation", "bound", "simulation", "sweep")


class ScenarioDocument(StrictModel):
    """Top level of a scenario file."""

    version: int = 1
    seed: Optional[int] = None
    requests: list[RequestEntryModel] = Field(min_length=1)
