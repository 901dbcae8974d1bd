"""Command-line front end."""
from .app import build_parser, main
from .exit_codes import ExitCode

__all__ = ["ExitCode", "build_parser", "main"]
