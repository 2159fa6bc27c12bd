"""Command bodies behind the CLI.

Each command takes a RunConfig and returns a CommandResult holding a plain
report dict; nothing here prints or touches the filesystem.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from modules.classify.audibility import audibility_report
from modules.classify.tables import classify, classify_algebra
from modules.cli.run_config import RunConfig, parse_pair
from modules.database.db import get_connection
from modules.database.models import fetch_run, list_runs
from modules.errors import InvalidInputError
from modules.heisalg.algebra import HeisenbergAlgebra, build_algebra, center_basis
from modules.heisalg.checks import (
    check_anticommutation,
    check_bracket,
    check_composition,
    check_heisenberg_type,
    check_skew,
    check_volume_element,
    isotypic_signature,
)
from modules.intertwine.sigma import j_intertwine_residual, orthogonality_residual, sigma_for_mode, sigma_map
from modules.spectral.eigen import compare_spectra, eigenvalues, spectrum_rows
from modules.spectral.fiber import FiberOperator
from modules.spectral.hermite import calibration_eigenvalues, calibration_matrix, hermite_matrix
from modules.spectral.residuals import intertwine_residual_sym

log = logging.getLogger(__name__)


@dataclass
class CommandResult:
    command: str
    report: Dict
    ok: bool = True
    rows: List[Dict] = field(default_factory=list)


# -------------------------
# verify
# -------------------------

def _sigma_checks(alg: HeisenbergAlgebra, cfg: RunConfig) -> List[Dict]:
    """Orthogonality and j-intertwining along every center basis vector, then random unit directions."""
    records = []
    tol_matrix = cfg.tol("tol_matrix")
    tol_orth = cfg.tol("tol_orthogonal")
    directions = list(center_basis(alg))
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.samples):
        z = rng.normal(size=alg.dim_z)
        directions.append(tuple(float(x) for x in z / np.linalg.norm(z)))

    worst_orth, worst_j = 0.0, 0.0
    ok_orth = ok_j = True
    for z in directions:
        sig = sigma_map(alg, z, tol=tol_matrix)
        orth = orthogonality_residual(sig, tol_orth)
        res = j_intertwine_residual(sig, 1, tol_matrix)
        worst_orth = max(worst_orth, orth.residual_norm)
        worst_j = max(worst_j, res.residual_norm)
        ok_orth &= orth.ok
        ok_j &= res.ok
    for name, worst, ok, tol in (
        ("sigma_orthogonality", worst_orth, ok_orth, tol_orth),
        ("j_intertwining", worst_j, ok_j, tol_matrix),
    ):
        records.append(
            {
                "name": name,
                "algebra": alg.to_dict(),
                "max_residual": worst,
                "exact": False,
                "samples": len(directions),
                "tolerance": tol,
                "ok": ok,
                "details": {"exact_directions": alg.dim_z},
            }
        )
    return records


def cmd_verify(cfg: RunConfig) -> CommandResult:
    alg = cfg.algebra()
    checks = [
        check_composition(alg.dim_a, cfg.samples, cfg.seed),
        check_heisenberg_type(alg, cfg.samples, cfg.seed),
        check_skew(alg, cfg.samples, cfg.seed),
        check_anticommutation(alg, cfg.samples, cfg.seed),
        check_bracket(alg, cfg.samples, cfg.seed),
        check_volume_element(alg),
    ]
    records = [c.to_dict() for c in checks] + _sigma_checks(alg, cfg)
    ok = all(r["ok"] for r in records)
    log.info("verify %s: %d checks, ok=%s", alg.label(), len(records), ok)
    return CommandResult("verify", {"algebra": alg.to_dict(), "checks": records, "ok": ok}, ok)


# -------------------------
# intertwine
# -------------------------

def cmd_intertwine(cfg: RunConfig) -> CommandResult:
    src = cfg.algebra()
    mode = cfg.mode(src.dim_z)
    sig = sigma_for_mode(src, mode, cfg.tol("tol_matrix"))
    result = intertwine_residual_sym(src, sig.target, sig, cfg.degree, cfg.coefficient(), mode)
    report = result.to_dict()
    report["sigma"] = sig.to_dict()
    return CommandResult("intertwine", report, result.ok)


# -------------------------
# spectrum
# -------------------------

def _spectrum_job(alg: HeisenbergAlgebra, cfg: RunConfig) -> Dict:
    op = FiberOperator(alg, cfg.mode(alg.dim_z), cfg.coefficient())
    trunc = hermite_matrix(op, cfg.degree)
    values = eigenvalues(trunc, cfg.k, tol=cfg.tol("eigen_tol"))
    return {"op": op, "trunc": trunc, "values": values}


def _spectrum_entry(job: Dict) -> Dict:
    op, trunc = job["op"], job["trunc"]
    defect = trunc.hermitian_defect()
    return {
        "label": trunc.label,
        "algebra": op.algebra.to_dict(),
        "alpha": list(op.mode.alpha),
        "degree": trunc.max_total_degree,
        "size": trunc.size,
        "hermitian_defect": defect,
        "eigenvalues": [float(v) for v in job["values"]],
    }


def _meta(op: FiberOperator) -> Dict:
    alg = op.algebra
    return {"algebra": alg.kind, "p": alg.p, "q": alg.q, "alpha": op.mode.label()}


def cmd_spectrum(cfg: RunConfig, pair: bool = False, calibrate: bool = False) -> CommandResult:
    src = cfg.algebra()
    algebras = [src]
    if pair:
        algebras.append(build_algebra(src.kind, src.p + src.q, 0))

    # one independent job per algebra; results are collected in input order
    with ThreadPoolExecutor(max_workers=len(algebras)) as executor:
        jobs = list(executor.map(lambda a: _spectrum_job(a, cfg), algebras))

    tol_herm = cfg.tol("tol_hermitian")
    spectra = [_spectrum_entry(job) for job in jobs]
    ok = all(s["hermitian_defect"] <= tol_herm for s in spectra)
    report: Dict = {"spectra": spectra, "k": cfg.k}

    if pair:
        comparison = compare_spectra(jobs[0]["trunc"], jobs[1]["trunc"], cfg.k, cfg.tol("tol_spectrum"))
        report["comparison"] = comparison.to_dict()
        ok &= comparison.ok

    if calibrate:
        cal = calibration_matrix(src, cfg.degree)
        got = eigenvalues(cal)
        want = calibration_eigenvalues(src, cfg.degree)
        diff = float(np.max(np.abs(got - want))) if len(got) else 0.0
        cal_ok = diff <= cfg.tol("tol_calibration")
        report["calibration"] = {"size": cal.size, "max_diff": diff, "ok": cal_ok}
        ok &= cal_ok

    rows = []
    for job in jobs:
        rows.extend(spectrum_rows(job["trunc"], job["values"], _meta(job["op"])))
    report["ok"] = ok
    return CommandResult("spectrum", report, ok, rows)


# -------------------------
# classify / report
# -------------------------

def cmd_classify(
    cfg: RunConfig,
    dim_z: Optional[int] = None,
    dim_v: Optional[int] = None,
    isotypic: bool = True,
) -> CommandResult:
    if dim_z is not None or dim_v is not None:
        if dim_z is None or dim_v is None:
            raise InvalidInputError("table lookups need both --dim-z and --dim-v")
        profile = classify(dim_z, dim_v, isotypic)
        report = {"case": {"dim_z": dim_z, "dim_v": dim_v, "isotypic": isotypic}, "profile": profile.to_dict()}
        return CommandResult("classify", report)

    alg = cfg.algebra()
    signature = isotypic_signature(alg)
    profile = classify_algebra(alg)
    report = {
        "algebra": alg.to_dict(),
        "dim_z": alg.dim_z,
        "dim_v": alg.dim_v,
        "signature": signature,
        "isotypic": abs(signature) == alg.slots,
        "profile": profile.to_dict(),
    }
    return CommandResult("classify", report)


def cmd_report(cfg: RunConfig, pair_text: str) -> CommandResult:
    (p1, q1), (p2, q2) = parse_pair(pair_text)
    a = build_algebra(cfg.kind, p1, q1)
    b = build_algebra(cfg.kind, p2, q2)
    return CommandResult("report", audibility_report(a, b).to_dict())


# -------------------------
# history
# -------------------------

def cmd_history(limit: int = 20, run_id: Optional[int] = None) -> CommandResult:
    with get_connection() as conn:
        if run_id is None:
            return CommandResult("history", {"runs": list_runs(conn, limit)})
        run = fetch_run(conn, run_id)
    if run is None:
        raise InvalidInputError(f"no run with id {run_id}", run_id=run_id)
    return CommandResult("history", run)

