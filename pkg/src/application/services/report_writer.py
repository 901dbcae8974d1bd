"""Rendering reports as aligned tables, delimited rows or JSON lines."""

import csv
import io
import json
import math
import os
from enum import Enum
from pathlib import Path
from typing import Any, Optional, TextIO

from integration.models import ReportDto, ReportRow

GREEN = "\033[32m"
RED = "\033[31m"
RESET = "\033[0m"
LEADING_COLUMNS = ("request", "kind")


class OutputFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    JSONL = "jsonl"


def use_color(stream: TextIO) -> bool:
    """Colour only interactive output, and never when NO_COLOR is set."""
    return "NO_COLOR" not in os.environ and stream.isatty()


def clean_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Enum):
        return value.value
    return value


def _text(value: Any) -> str:
    value = clean_value(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _display(value: Any, color: bool) -> str:
    value = clean_value(value)
    if isinstance(value, bool):
        label = "PASS" if value else "FAIL"
        if color:
            return f"{GREEN if value else RED}{label}{RESET}"
        return label
    if isinstance(value, float):
        return f"{value:.4f}".rstrip("0").rstrip(".")
    return _text(value)


def flat_rows(report: ReportDto) -> list[ReportRow]:
    rows = []
    for section in report.sections:
        for row in section.rows:
            rows.append({"request": section.name, "kind": section.kind, **row})
    return rows


def columns_of(rows: list[ReportRow]) -> list[str]:
    """Union of the row keys in first-seen order."""
    columns: dict[str, None] = {}
    for row in rows:
        for key in row:
            columns.setdefault(key, None)
    return list(columns)


def render_table(report: ReportDto, color: bool = False) -> str:
    meta = report.metadata
    header = f"{meta.tool} {meta.tool_version}  schema v{meta.schema_version}"
    if meta.source:
        header += f"  source: {meta.source}"
    if meta.scenario_digest:
        header += f"  sha256: {meta.scenario_digest[:12]}"
    if meta.seeds:
        header += f"  seeds: {', '.join(str(s) for s in meta.seeds)}"
    lines = [header]

    for section in report.sections:
        lines.append("")
        lines.append(f"== {section.name} ({section.kind})")
        columns = columns_of(section.rows)
        if not columns:
            continue
        cells = [[_display(row.get(c), color) for c in columns] for row in section.rows]
        # ANSI codes take no width on screen.
        plain = [[_display(row.get(c), False) for c in columns] for row in section.rows]
        widths = [max([len(c)] + [len(r[i]) for r in plain]) for i, c in enumerate(columns)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        for row_cells, row_plain in zip(cells, plain):
            padded = [cell + " " * (w - len(p)) for cell, p, w in zip(row_cells, row_plain, widths)]
            lines.append("  ".join(padded).rstrip())
    return "\n".join(lines) + "\n"


def render_csv(report: ReportDto) -> str:
    rows = flat_rows(report)
    columns = columns_of(rows) or list(LEADING_COLUMNS)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_text(row.get(c)) for c in columns])
    return buffer.getvalue()


def render_jsonl(report: ReportDto) -> str:
    records: list[dict[str, Any]] = [{"record": "metadata", **report.metadata.model_dump(mode="json")}]
    for row in flat_rows(report):
        records.append({"record": "row", **{k: clean_value(v) for k, v in row.items()}})
    records.append({"record": "summary", "passed": report.passed, "sections": len(report.sections)})
    return "".join(json.dumps(record, sort_keys=True) + "\n" for record in records)


def render_report(report: ReportDto, output_format: OutputFormat, color: bool = False) -> str:
    if output_format == OutputFormat.CSV:
        return render_csv(report)
    if output_format == OutputFormat.JSONL:
        return render_jsonl(report)
    return render_table(report, color)


def write_report(text: str, out: Optional[Path], stream: TextIO) -> None:
    if out is None:
        stream.write(text)
        stream.flush()
        return
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
