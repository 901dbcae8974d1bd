import logging
import os
from typing import Optional, TextIO

DEFAULT_LOG_FORMAT = "%(asctime)s %(levelname) - 8s %(name)s:%(lineno)d %(message)s"
DEFAULT_LOG_FILENAME = "logs/cyber-cycle.log"
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_LOG_LIBRARIES_LIST = ["asyncio", "numpy", "opentelemetry", "neuroglia"]
DEFAULT_LOG_LIBRARIES_LEVEL = "WARN"


def configure_logging(
    log_level: str = DEFAULT_LOG_LEVEL,
    log_format: str = DEFAULT_LOG_FORMAT,
    stream: Optional[TextIO] = None,
    file: bool = False,
    filename: str = DEFAULT_LOG_FILENAME,
    lib_list: Optional[list[str]] = None,
    lib_level: str = DEFAULT_LOG_LIBRARIES_LEVEL,
) -> None:
    """Configures the root logger for one CLI invocation.

    Records go to ``stream`` (the diagnostics stream handed to the CLI, stderr by
    default) and never to stdout, which carries the report. Any handler left by
    an earlier invocation is replaced.

    Args:
        log_level (str, optional): The level of the root logger. Defaults to DEFAULT_LOG_LEVEL.
        log_format (str, optional): The format of the log records. Defaults to DEFAULT_LOG_FORMAT.
        stream (TextIO, optional): Where console records are written. Defaults to ``sys.stderr``.
        file (bool, optional): Whether to also log to ``filename``. Defaults to False.
        filename (str, optional): The log file, created with its directory when missing.
        lib_list (list[str], optional): Third-party loggers kept at ``lib_level``. Defaults to DEFAULT_LOG_LIBRARIES_LIST.
        lib_level (str, optional): The level of the loggers in ``lib_list``. Defaults to DEFAULT_LOG_LIBRARIES_LEVEL.
    """
    log_level = log_level.upper()
    formatter = logging.Formatter(log_format)

    root_logger = logging.getLogger()
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        if getattr(handler, "_cyber_cycle", False):
            handler.close()
    root_logger.setLevel(log_level)

    handlers: list[logging.Handler] = [logging.StreamHandler(stream)]
    if file:
        directory = os.path.dirname(filename)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(filename, encoding="utf-8"))
    for handler in handlers:
        handler.setLevel(log_level)
        handler.setFormatter(formatter)
        setattr(handler, "_cyber_cycle", True)
        root_logger.addHandler(handler)

    for lib_name in DEFAULT_LOG_LIBRARIES_LIST if lib_list is None else lib_list:
        logging.getLogger(lib_name).setLevel(lib_level.upper())
