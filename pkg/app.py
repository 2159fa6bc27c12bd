"""HeisLab command line: verification suites, symbolic intertwining, truncated
spectra and classification reports for the groups N(p, q)."""

from __future__ import annotations

import json
import logging
import sys
from typing import Callable, Optional

import click

import config
from modules.cli.commands import (
    CommandResult,
    cmd_classify,
    cmd_history,
    cmd_intertwine,
    cmd_report,
    cmd_spectrum,
    cmd_verify,
)
from modules.cli.output import output_path, render, write_output
from modules.cli.run_config import OUTPUT_FORMATS, RunConfig
from modules.database.db import get_connection
from modules.database.models import insert_run
from modules.errors import EXIT_CHECK_FAILED, EXIT_OK, HeisLabError

log = logging.getLogger("heislab")

TOLERANCE_FLAGS = ("tol_matrix", "tol_orthogonal", "tol_spectrum", "tol_calibration", "tol_hermitian")


def _record(command: str, run_config: dict, status: str, exit_code: int, report: dict) -> None:
    if not config.LEDGER_ENABLED:
        return
    try:
        with get_connection() as conn:
            insert_run(conn, command, run_config, status, exit_code, report)
    except Exception as exc:
        log.warning("could not record run in ledger: %s", exc)


def _fail(command: str, err: HeisLabError, run_config: Optional[dict] = None) -> None:
    payload = {"ok": False, "command": command, "schema_version": config.SCHEMA_VERSION, "error": err.to_dict()}
    click.echo(json.dumps(payload, sort_keys=True), err=True)
    _record(command, run_config or {}, "error", err.exit_code, payload)
    sys.exit(err.exit_code)


def _finish(result: CommandResult, run_config: dict, fmt: str, output: Optional[str]) -> None:
    text = render(result, run_config, fmt)
    path = output_path(result.command, fmt, output)
    if path:
        write_output(text, path)
        log.info("wrote %s", path)
    else:
        click.echo(text, nl=False)
    exit_code = EXIT_OK if result.ok else EXIT_CHECK_FAILED
    _record(result.command, run_config, "pass" if result.ok else "fail", exit_code, result.report)
    sys.exit(exit_code)


def _run(
    command: str,
    build: Callable[[], RunConfig],
    body: Callable[[RunConfig], CommandResult],
    echo: Optional[Callable[[RunConfig], dict]] = None,
) -> None:
    """Build the config, run the command and report. `echo` picks the config keys the report repeats."""
    echo = echo or RunConfig.to_dict
    cfg = None
    try:
        cfg = build()
        result = body(cfg)
    except HeisLabError as err:
        _fail(command, err, echo(cfg) if cfg else None)
        return
    _finish(result, echo(cfg), cfg.fmt, cfg.output)


def _build_config(**kwargs) -> Callable[[], RunConfig]:
    tolerances = {name: kwargs.pop(name) for name in TOLERANCE_FLAGS if kwargs.get(name) is not None}
    for name in TOLERANCE_FLAGS:
        kwargs.pop(name, None)
    return lambda: RunConfig(tolerances=tolerances, **kwargs)


# -------------------------
# Shared options
# -------------------------

def algebra_options(fn):
    options = [
        click.option("--kind", default="octonion", show_default=True, help="octonion | quaternion (aliases: o, h, ...)"),
        click.option("-p", "p", default=1, show_default=True, type=int, help="Left-multiplication slots."),
        click.option("-q", "q", default=1, show_default=True, type=int, help="Right-multiplication slots."),
        click.option("--seed", default=config.DEFAULT_SEED, show_default=True, type=int),
        click.option("--format", "fmt", default="json", show_default=True, type=click.Choice(OUTPUT_FORMATS)),
        click.option("--output", "-o", default=None, help="Report path (default: $HEISLAB_OUTPUT_DIR or stdout)."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def tolerance_options(fn):
    for name in reversed(TOLERANCE_FLAGS):
        flag = "--" + name.replace("_", "-")
        fn = click.option(flag, name, default=None, type=float, help=f"Override {name.upper()}.")(fn)
    return fn


# -------------------------
# Commands
# -------------------------

@click.group()
@click.option("--log-level", default=None, help="Logging level (default: $HEISLAB_LOG_LEVEL or WARNING).")
def cli(log_level: Optional[str]):
    """Verification toolkit for generalized Heisenberg groups N(p, q)."""
    logging.basicConfig(
        level=(log_level or config.LOG_LEVEL).upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@algebra_options
@click.option("--samples", default=config.RANDOM_SAMPLES, show_default=True, type=int, help="Random samples per check.")
@tolerance_options
def verify(**kwargs):
    """Composition law, Heisenberg type, bracket, sigma orthogonality and j-intertwining."""
    _run("verify", _build_config(**kwargs), cmd_verify)


@cli.command()
@algebra_options
@click.option("--alpha", default=None, help="Mode as comma-separated integers (default e_1).")
@click.option("-d", "--degree", default=2, show_default=True, type=int)
@click.option("--coeff-c", default=None, help="Radial coefficient (default dim v / 4).")
@tolerance_options
def intertwine(**kwargs):
    """Symbolic residual of sigma^* between the (p,q) and (p+q,0) fiber Laplacians."""
    _run("intertwine", _build_config(**kwargs), cmd_intertwine)


@cli.command()
@algebra_options
@click.option("--alpha", default=None, help="Mode as comma-separated integers (default e_1).")
@click.option("-d", "--degree", default=2, show_default=True, type=int)
@click.option("-k", "k", default=20, show_default=True, type=int, help="Number of extreme eigenvalues.")
@click.option("--coeff-c", default=None, help="Radial coefficient (default dim v / 4).")
@click.option("--pair", is_flag=True, help="Also solve the (p+q,0) fiber and compare.")
@click.option("--calibrate", is_flag=True, help="Check the harmonic-oscillator control operator.")
@tolerance_options
def spectrum(pair: bool, calibrate: bool, **kwargs):
    """Truncated Hermite-basis spectra of the fiber Laplacian."""
    _run("spectrum", _build_config(**kwargs), lambda cfg: cmd_spectrum(cfg, pair=pair, calibrate=calibrate))


@cli.command(name="classify")
@algebra_options
@click.option("--dim-z", default=None, type=int, help="Table lookup instead of an algebra.")
@click.option("--dim-v", default=None, type=int)
@click.option("--isotypic/--non-isotypic", default=True, show_default=True)
def classify_command(dim_z: Optional[int], dim_v: Optional[int], isotypic: bool, **kwargs):
    """Commutativity, weak symmetry and g.o. property."""
    _run("classify", _build_config(**kwargs), lambda cfg: cmd_classify(cfg, dim_z, dim_v, isotypic))


@cli.command()
@click.option("--kind", default="octonion", show_default=True)
@click.option("--pair", "pair_text", required=True, help="Two algebras as p,q:p',q' (e.g. 1,1:2,0).")
@click.option("--format", "fmt", default="json", show_default=True, type=click.Choice(OUTPUT_FORMATS))
@click.option("--output", "-o", default=None)
def report(kind: str, pair_text: str, fmt: str, output: Optional[str]):
    """Audibility report for a pair of algebras."""
    _run(
        "report",
        lambda: RunConfig(kind=kind, fmt=fmt, output=output),
        lambda cfg: cmd_report(cfg, pair_text),
        lambda cfg: {"kind": cfg.kind, "pair": pair_text, "fmt": cfg.fmt},
    )


@cli.command()
@click.option("--limit", default=20, show_default=True, type=int)
@click.option("--id", "run_id", default=None, type=int, help="Show one stored run.")
@click.option("--format", "fmt", default="text", show_default=True, type=click.Choice(OUTPUT_FORMATS))
def history(limit: int, run_id: Optional[int], fmt: str):
    """Recent runs from the ledger."""
    try:
        result = cmd_history(limit, run_id)
    except HeisLabError as err:
        _fail("history", err)
        return
    click.echo(render(result, {"limit": limit, "id": run_id}, fmt), nl=False)


if __name__ == "__main__":
    cli()
