"""
Cyber Cycle command line
========================

Subcommands:
    run <file>          execute every request of a scenario file, in order
    sweep <file>        execute only the sweep requests of a scenario file
    paper-examples      recompute the worked variety and regulation examples
    bound               longest reconfiguration period for an entropy budget
    schema              print the JSON schema of scenario files

Usage Examples:
    cyber-cycle run scenarios/general.yaml --format jsonl --out report.jsonl
    cyber-cycle bound --h-move 20 --rate 2/hour --margin 1
    cyber-cycle paper-examples

Exit Codes:
    0 success, 1 runtime error, 2 usage error, 3 scenario file error,
    4 validation error, 5 worked-example mismatch.
"""

import argparse
import asyncio
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Optional, TextIO

from application.commands import (
    RunScenarioFileCommand,
    RunScenarioFileCommandHandler,
    RunSweepCommand,
    RunSweepCommandHandler,
)
from application.queries import (
    GetReconfigBoundQuery,
    GetReconfigBoundQueryHandler,
    GetWorkedExamplesQuery,
    GetWorkedExamplesQueryHandler,
)
from application.services import OutputFormat, configure_logging, render_report, use_color, write_report
from application.settings import Settings, app_settings
from integration.exceptions import ScenarioFileError
from integration.models import ReportDto, ReportMetadata, ReportSection, ScenarioDocument
from integration.services.scenario_loader import parse_scenario

from .exit_codes import ExitCode

log = logging.getLogger(__name__)


def build_parser(settings: Settings = app_settings) -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--seed", type=int, help="Default seed for simulations that do not set their own")
    output.add_argument("--out", type=Path, help="Write the report to this file instead of stdout")
    output.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=settings.default_output_format,
        help="Report format (default: %(default)s)",
    )

    p = argparse.ArgumentParser(prog="cyber-cycle", description="Variety, regulation and cyber-cycle simulations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[output], help="Execute every request of a scenario file")
    run.add_argument("file", type=Path, help="Scenario file (YAML)")

    sweep = sub.add_parser("sweep", parents=[output], help="Execute the sweep requests of a scenario file")
    sweep.add_argument("file", type=Path, help="Scenario file (YAML)")

    sub.add_parser("paper-examples", parents=[output], help="Recompute and check the worked examples")

    bound = sub.add_parser("bound", parents=[output], help="Longest reconfiguration period for an entropy budget")
    bound.add_argument("--h-move", type=float, required=True, help="Bits of configuration entropy per move")
    bound.add_argument("--rate", required=True, help="Attacker disturbance rate, e.g. 2/hour")
    bound.add_argument("--margin", type=float, default=1.0, help="Safety margin, at least 1 (default: %(default)s)")
    bound.add_argument("--compromise-time", type=float, help="Also report the half-compromise-time heuristic")

    sub.add_parser("schema", help="Print the JSON schema of scenario files")
    return p


def _emit(report: ReportDto, args: argparse.Namespace, stdout: TextIO) -> None:
    output_format = OutputFormat(args.format)
    color = args.out is None and use_color(stdout)
    write_report(render_report(report, output_format, color), args.out, stdout)


def _run_file(args: argparse.Namespace, settings: Settings, stdout: TextIO, stderr: TextIO) -> ExitCode:
    try:
        scenario = parse_scenario(args.file, settings.schema_version)
    except ScenarioFileError as e:
        stderr.write(f"error: {e.diagnostic}\n")
        return ExitCode.PARSE

    if args.command == "sweep":
        result = asyncio.run(RunSweepCommandHandler(settings).handle_async(RunSweepCommand(scenario, args.seed)))
    else:
        result = asyncio.run(
            RunScenarioFileCommandHandler(settings).handle_async(RunScenarioFileCommand(scenario, args.seed))
        )
    if not result.is_success:
        stderr.write(f"error: {result.detail}\n")
        return ExitCode.VALIDATION
    _emit(result.data, args, stdout)
    return ExitCode.OK


def _paper_examples(args: argparse.Namespace, settings: Settings, stdout: TextIO, stderr: TextIO) -> ExitCode:
    result = asyncio.run(GetWorkedExamplesQueryHandler(settings).handle_async(GetWorkedExamplesQuery()))
    if not result.is_success:
        stderr.write(f"error: {result.detail}\n")
        return ExitCode.VALIDATION
    report: ReportDto = result.data
    _emit(report, args, stdout)
    if not report.passed:
        stderr.write("error: at least one worked example does not match its expected value\n")
        return ExitCode.CHECK_FAILED
    return ExitCode.OK


def _bound(args: argparse.Namespace, settings: Settings, stdout: TextIO, stderr: TextIO) -> ExitCode:
    query = GetReconfigBoundQuery(args.h_move, args.rate, args.margin, args.compromise_time)
    result = asyncio.run(GetReconfigBoundQueryHandler().handle_async(query))
    if not result.is_success:
        stderr.write(f"error: {result.detail}\n")
        return ExitCode.VALIDATION

    bound = result.data
    if OutputFormat(args.format) == OutputFormat.TABLE:
        lines = [bound.text]
        if bound.heuristic_text is not None:
            lines.append(f"heuristic: {bound.heuristic_text}")
        write_report("\n".join(lines) + "\n", args.out, stdout)
        return ExitCode.OK

    row = {"max_period": None if bound.unbounded else bound.period, "max_period_text": bound.text}
    if bound.heuristic_period is not None:
        row.update({"heuristic_period": bound.heuristic_period, "heuristic_period_text": bound.heuristic_text})
    metadata = ReportMetadata(
        tool=settings.app_name, tool_version=settings.app_version, schema_version=settings.schema_version
    )
    _emit(ReportDto(metadata=metadata, sections=[ReportSection(name="bound", kind="bound", rows=[row])]), args, stdout)
    return ExitCode.OK


def _schema(stdout: TextIO) -> ExitCode:
    stdout.write(json.dumps(ScenarioDocument.model_json_schema(), indent=2, sort_keys=True) + "\n")
    return ExitCode.OK


def main(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
    settings: Settings = app_settings,
) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    configure_logging(
        log_level=settings.log_level,
        log_format=settings.log_format,
        stream=stderr,
        file=settings.log_file_enabled,
        filename=settings.log_filename,
    )
    args = build_parser(settings).parse_args(argv)
    log.debug("Running '%s'", args.command)

    try:
        if args.command in ("run", "sweep"):
            return _run_file(args, settings, stdout, stderr)
        if args.command == "paper-examples":
            return _paper_examples(args, settings, stdout, stderr)
        if args.command == "bound":
            return _bound(args, settings, stdout, stderr)
        return _schema(stdout)
    except Exception as e:
        log.exception("Unexpected failure in '%s'", args.command)
        stderr.write(f"error: {e}\n")
        return ExitCode.RUNTIME


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.stderr.write("\n[abort] Interrupted by user.\n")
        sys.exit(ExitCode.RUNTIME)
