from __future__ import annotations

import csv
import io
import json
import os
from typing import Any, Dict, List, Optional, Tuple

import config
from modules.cli.commands import CommandResult
from modules.reports.report_generator import generate_report, render_text

SPECTRUM_COLUMNS = ["algebra", "p", "q", "alpha", "degree", "index", "eigenvalue"]
EXTENSIONS = {"json": "json", "csv": "csv", "text": "txt"}


def envelope(result: CommandResult, run_config: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "schema_version": config.SCHEMA_VERSION,
        "command": result.command,
        "ok": result.ok,
        "config": run_config,
        "report": result.report,
    }


def render_json(result: CommandResult, run_config: Dict[str, Any]) -> str:
    return json.dumps(envelope(result, run_config), sort_keys=True, indent=2, default=str) + "\n"


def _table(result: CommandResult) -> Tuple[List[str], List[Dict[str, Any]]]:
    report = result.report
    if result.command == "spectrum":
        return SPECTRUM_COLUMNS, result.rows
    if result.command == "intertwine":
        return ["degree", "monomials", "max_residual", "nonzero"], report.get("per_degree", [])
    if result.command == "verify":
        return ["name", "ok", "max_residual", "samples", "tolerance"], report.get("checks", [])
    if result.command == "classify":
        return ["property", "value"], [{"property": k, "value": v} for k, v in report["profile"].items()]
    if result.command == "report":
        prof_a, prof_b = report["profiles"]
        inaudible = set(report["inaudible_properties"])
        return ["property", "a", "b", "inaudible"], [
            {"property": k, "a": prof_a[k], "b": prof_b[k], "inaudible": k in inaudible} for k in prof_a
        ]
    if result.command == "history":
        return ["id", "created_at", "command", "status", "exit_code"], report.get("runs", [])
    return [], []


def render_csv(result: CommandResult) -> str:
    columns, rows = _table(result)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def render(result: CommandResult, run_config: Dict[str, Any], fmt: str) -> str:
    if fmt == "csv":
        return render_csv(result)
    if fmt == "text":
        return render_text(generate_report(result.command, result.report))
    return render_json(result, run_config)


def output_path(command: str, fmt: str, explicit: Optional[str]) -> Optional[str]:
    """Explicit path first, then HEISLAB_OUTPUT_DIR/<command>.<ext>, else None for stdout."""
    if explicit:
        return explicit
    if config.OUTPUT_DIR:
        return os.path.join(config.OUTPUT_DIR, f"{command}.{EXTENSIONS[fmt]}")
    return None


def write_output(text: str, path: str) -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
