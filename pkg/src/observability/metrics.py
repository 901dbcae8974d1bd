"""Business metrics for the cyber-cycle toolkit."""
from opentelemetry import metrics

meter = metrics.get_meter(__name__)

# Counters
simulations_run = meter.create_counter(
    name="cyber_cycle.simulations.run",
    description="Total simulation runs executed",
    unit="1"
)

attacks_succeeded = meter.create_counter(
    name="cyber_cycle.attacks.succeeded",
    description="Successful attacks observed across simulation runs",
    unit="1"
)

worked_example_checks_failed = meter.create_counter(
    name="cyber_cycle.worked_examples.failed",
    description="Worked-example checks that did not match their expected value",
    unit="1"
)

requests_executed = meter.create_counter(
    name="cyber_cycle.requests.executed",
    description="Scenario-file requests executed",
    unit="1"
)

# Histograms
simulation_duration = meter.create_histogram(
    name="cyber_cycle.simulation.duration",
    description="Wall-clock time to execute a simulation or sweep request",
    unit="ms"
)
