"""Seeded discrete-event loop of the coupled attacker/defender cycle.

The attacker scans, develops an exploit against the configuration it saw, and
launches it the moment it is ready. The defender moves along its configuration
trajectory, monitors for compromise and resets. Every random draw comes from a
labelled stream of the run seed, and events sharing a timestamp are ordered by
their kind, so a (scenario, seed) pair always yields the same trace.
"""

import heapq
import logging
import math
from dataclasses import dataclass
from typing import Any, Optional

from domain.enums import ArrivalProcess, InvalidationMode, SimEventKind
from domain.mtd_process import ConfigTrajectory, generate_trajectory
from domain.random_streams import RandomStreams
from domain.simulation.models import Scenario, SimEvent, SimMetrics, SimTrace

log = logging.getLogger(__name__)

DETECTION_CAUSE = "detection"
ROTATION_CAUSE = "rotation"


@dataclass(frozen=True)
class _Exploit:
    config: int
    epoch: int


class _CyberCycleLoop:
    def __init__(self, scenario: Scenario, seed: int) -> None:
        self.scenario = scenario
        self.attacker = scenario.attacker
        self.defender = scenario.defender
        self.horizon = scenario.horizon
        self.streams = RandomStreams(seed)
        self.trajectory: ConfigTrajectory = generate_trajectory(
            self.defender.policy,
            self.defender.space,
            self.horizon,
            seed,
            allow_same_config=self.defender.allow_same_config,
        )
        self.queue: list[tuple[float, int, int, SimEventKind, dict[str, Any]]] = []
        self.sequence = 0
        self.events: list[SimEvent] = []
        self.exploit: Optional[_Exploit] = None
        self.compromised = False
        # Bumped on every compromise so stale monitor checks and resets can be dropped.
        self.generation = 0
        self.resetting: Optional[int] = None

    def push(self, time: float, kind: SimEventKind, **data: Any) -> None:
        if time > self.horizon:
            return
        heapq.heappush(self.queue, (time, kind.priority, self.sequence, kind, data))
        self.sequence += 1

    def record(self, time: float, kind: SimEventKind, **fields: Any) -> None:
        self.events.append(SimEvent(time, kind, **fields))

    def member_config(self, member: int, t: float) -> int:
        return (self.trajectory.lookup(t) + member) % self.trajectory.size

    def next_scan_time(self, now: float) -> float:
        interval = self.attacker.scan_interval
        if self.attacker.arrivals == ArrivalProcess.POISSON:
            return now + float(self.streams.stream("attacker.arrivals").exponential(interval))
        k = math.floor(now / interval) + 1
        while k * interval <= now:
            k += 1
        return k * interval

    def run(self) -> SimTrace:
        for time, config in self.trajectory.events:
            self.push(time, SimEventKind.RECONFIGURE, config=config)
        self.push(self.next_scan_time(0.0), SimEventKind.SCAN)

        while self.queue:
            time, _, _, kind, data = heapq.heappop(self.queue)
            handler = getattr(self, f"on_{kind.value}")
            handler(time, **data)

        return SimTrace(self.scenario, self.streams.seed, tuple(self.events))

    def on_reconfigure(self, t: float, config: int) -> None:
        self.record(t, SimEventKind.RECONFIGURE, config=config)

    def on_scan(self, t: float) -> None:
        if self.scenario.pool_size > 1:
            member = self.streams.uniform_index("dispatch.scan", self.scenario.pool_size)
            config = self.member_config(member, t)
        else:
            member = None
            config = self.trajectory.lookup(t)
        self.exploit = _Exploit(config, self.trajectory.epoch(t))
        self.record(t, SimEventKind.SCAN, config=config, member=member)
        dev_time = self.attacker.exploit_dev_time.sample(self.streams.stream("attacker.exploit_dev"))
        self.push(t + dev_time, SimEventKind.EXPLOIT_READY)

    def on_exploit_ready(self, t: float) -> None:
        assert self.exploit is not None
        self.record(t, SimEventKind.EXPLOIT_READY, config=self.exploit.config)
        self.push(t, SimEventKind.ATTACK_LAUNCHED)

    def _matches(self, t: float, member: Optional[int]) -> bool:
        assert self.exploit is not None
        current = self.trajectory.lookup(t) if member is None else self.member_config(member, t)
        if current != self.exploit.config:
            return False
        if self.scenario.invalidation == InvalidationMode.STRICT_EPOCH:
            return self.trajectory.epoch(t) == self.exploit.epoch
        return True

    def on_attack_launched(self, t: float) -> None:
        assert self.exploit is not None
        member: Optional[int] = None
        if self.streams.chance("attacker.bypass", self.attacker.bypass_prob):
            outcome = "bypass"
        elif self.streams.chance("defender.filter", self.defender.input_filter_prob):
            outcome = "filtered"
        else:
            if self.scenario.pool_size > 1:
                member = self.streams.uniform_index("dispatch.attack", self.scenario.pool_size)
            if self._matches(t, member):
                outcome = "match"
            elif self.streams.chance("attacker.mismatch", self.attacker.mismatch_success_prob):
                outcome = "mismatch"
            else:
                outcome = "miss"
        self.record(t, SimEventKind.ATTACK_LAUNCHED, config=self.exploit.config, member=member, outcome=outcome)
        self.exploit = None

        if outcome in ("bypass", "match", "mismatch"):
            self.push(t, SimEventKind.COMPROMISE_START, member=member)
        elif self.attacker.retry:
            self.push(self.next_scan_time(t), SimEventKind.SCAN)

    def on_compromise_start(self, t: float, member: Optional[int]) -> None:
        self.compromised = True
        self.generation += 1
        self.record(t, SimEventKind.COMPROMISE_START, member=member)
        self.schedule_check(t)
        period = self.scenario.pool_reset_period
        if period is not None:
            self.push((math.floor(t / period) + 1) * period, SimEventKind.RESET_COMPLETE, cause=ROTATION_CAUSE)

    def schedule_check(self, t: float) -> None:
        if self.defender.detection_prob <= 0:
            return
        delay = self.defender.detection_delay.sample(self.streams.stream("defender.detection_delay"))
        self.push(t + delay, SimEventKind.DETECTION, generation=self.generation)

    def on_detection(self, t: float, generation: int) -> None:
        if not self.compromised or generation != self.generation or self.resetting == generation:
            return
        if not self.streams.chance("defender.detection", self.defender.detection_prob):
            self.schedule_check(t)
            return
        self.record(t, SimEventKind.DETECTION)
        self.resetting = generation
        self.push(
            t + self.defender.reset_latency, SimEventKind.RESET_COMPLETE, cause=DETECTION_CAUSE, generation=generation
        )

    def on_reset_complete(self, t: float, cause: str, generation: Optional[int] = None) -> None:
        if cause == DETECTION_CAUSE and self.resetting == generation:
            self.resetting = None
        # A detection reset only acts on the compromise it was raised for.
        stale = cause == DETECTION_CAUSE and generation != self.generation
        if not self.compromised or stale:
            self.record(t, SimEventKind.RESET_COMPLETE, cause=cause, outcome="idle")
            return
        if self.streams.chance("defender.persistence", self.defender.persistence_prob):
            self.record(t, SimEventKind.RESET_COMPLETE, cause=cause, outcome="persisted")
            if cause == DETECTION_CAUSE:
                self.schedule_check(t)
            else:
                period = self.scenario.pool_reset_period
                assert period is not None
                self.push(t + period, SimEventKind.RESET_COMPLETE, cause=ROTATION_CAUSE)
            return
        self.record(t, SimEventKind.RESET_COMPLETE, cause=cause, outcome="cleared")
        self.compromised = False
        self.push(self.next_scan_time(t), SimEventKind.SCAN)


def compute_metrics(trace: SimTrace) -> SimMetrics:
    """Derive run statistics from a trace."""
    scenario = trace.scenario
    horizon = scenario.horizon
    first_compromise: Optional[float] = None
    attempts_to_first: Optional[int] = None
    compromised_since: Optional[float] = None
    down_since: Optional[float] = None
    dwell = downtime = 0.0
    pending_resets = 0
    successes = exploits = launched = bypasses = detections = resets = 0

    for event in trace.events:
        kind = event.kind
        if kind == SimEventKind.EXPLOIT_READY:
            exploits += 1
        elif kind == SimEventKind.ATTACK_LAUNCHED:
            launched += 1
            if event.outcome == "bypass":
                bypasses += 1
        elif kind == SimEventKind.COMPROMISE_START:
            successes += 1
            compromised_since = event.time
            if first_compromise is None:
                first_compromise = event.time
                attempts_to_first = launched
        elif kind == SimEventKind.DETECTION:
            detections += 1
            if pending_resets == 0:
                down_since = event.time
            pending_resets += 1
        elif kind == SimEventKind.RESET_COMPLETE:
            resets += 1
            if event.cause == DETECTION_CAUSE and pending_resets > 0:
                pending_resets -= 1
                # Overlapping resets count once.
                if pending_resets == 0 and down_since is not None:
                    downtime += event.time - down_since
                    down_since = None
            if event.outcome == "cleared" and compromised_since is not None:
                dwell += event.time - compromised_since
                compromised_since = None

    if compromised_since is not None:
        dwell += horizon - compromised_since
    if down_since is not None:
        downtime += horizon - down_since

    return SimMetrics(
        seed=trace.seed,
        time_to_first_compromise=first_compromise,
        compromised_fraction=min(1.0, dwell / horizon),
        successful_attacks=successes,
        exploits_developed=exploits,
        availability=max(0.0, 1.0 - downtime / (horizon * scenario.pool_size)),
        attempts_to_first_success=attempts_to_first,
        attacks_launched=launched,
        bypass_successes=bypasses,
        detections=detections,
        resets=resets,
        downtime=downtime,
        dwell_time=dwell,
    )


def run(scenario: Scenario, seed: int) -> tuple[SimTrace, SimMetrics]:
    trace = _CyberCycleLoop(scenario, seed).run()
    metrics = compute_metrics(trace)
    log.debug(
        "Run '%s' seed=%d: %d events, %d successful attacks",
        scenario.label,
        seed,
        len(trace.events),
        metrics.successful_attacks,
    )
    return trace, metrics
