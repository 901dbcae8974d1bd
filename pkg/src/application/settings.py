"""Application settings configuration."""

from neuroglia.hosting.abstractions import ApplicationSettings


class Settings(ApplicationSettings):
    """Settings for the cyber-cycle toolkit, read from the environment and ``.env``."""

    # Logging Configuration
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s %(levelname) - 8s %(name)s:%(lineno)d %(message)s"
    log_file_enabled: bool = False
    log_filename: str = "logs/cyber-cycle.log"

    # Application Configuration
    app_name: str = "Cyber Cycle"
    app_version: str = "0.1.0"
    # Version of the scenario-file and report schemas
    schema_version: int = 1

    # Simulation Defaults
    default_seed: int = 0
    default_output_format: str = "table"
    sweep_workers: int = 1

    # Observability Configuration
    service_name: str = "cyber-cycle"

    class Config:
        env_file = ".env"
        case_sensitive = False
        extra = "ignore"  # Ignore extra environment variables


app_settings = Settings()
