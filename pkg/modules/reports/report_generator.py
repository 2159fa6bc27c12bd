from typing import Any, Dict, List

from modules.classify.audibility import COMPACT_NOTE, SCOPE

PROPERTY_LABELS = {
    "commutative": "commutative",
    "weakly_symmetric_broad": "weakly symmetric (broad sense)",
    "weakly_symmetric_narrow": "weakly symmetric (narrow sense)",
    "go_space": "g.o. space",
    "weakly_locally_symmetric": "weakly locally symmetric",
}


def _algebra_label(alg: Dict[str, Any]) -> str:
    return f"N({alg.get('p')},{alg.get('q')}) over the {alg.get('kind', '?')}s"


def _verify_lines(report: Dict[str, Any]) -> List[str]:
    lines = []
    for check in report.get("checks", []):
        status = "passed" if check.get("ok") else "FAILED"
        lines.append(f"{check.get('name')}: {status} (max residual {check.get('max_residual'):.3g})")
    return lines


def _intertwine_lines(report: Dict[str, Any]) -> List[str]:
    lines = [
        f"sigma^* intertwines the fiber Laplacians of {_algebra_label(report['source'])} "
        f"and {_algebra_label(report['target'])} for alpha = {report.get('alpha')}."
        if report.get("ok")
        else "The symbolic intertwining residual did NOT vanish."
    ]
    for row in report.get("per_degree", []):
        lines.append(
            f"degree {row['degree']}: {row['monomials']} monomials, max residual {row['max_residual']:.3g}"
        )
    return lines


def _spectrum_lines(report: Dict[str, Any]) -> List[str]:
    lines = []
    for spectrum in report.get("spectra", []):
        values = spectrum.get("eigenvalues", [])
        if values:
            lines.append(
                f"{spectrum.get('label')}: {len(values)} eigenvalues in [{min(values):.6g}, {max(values):.6g}]"
            )
    comparison = report.get("comparison")
    if comparison:
        verdict = "agree" if comparison.get("ok") else "DISAGREE"
        lines.append(f"Truncated spectra {verdict}: max difference {comparison.get('max_diff'):.3g}.")
    return lines


def _profile_lines(profile: Dict[str, bool]) -> List[str]:
    return [f"{PROPERTY_LABELS.get(k, k)}: {'yes' if v else 'no'}" for k, v in profile.items()]


def _audibility_lines(report: Dict[str, Any]) -> List[str]:
    a, b = report["pair"]
    lines = [
        f"{_algebra_label(a)} and {_algebra_label(b)} are "
        + ("isospectral" if report["isospectral"] else "not isospectral")
        + " and "
        + ("locally isometric." if report["locally_isometric"] else "not locally isometric.")
    ]
    inaudible = report.get("inaudible_properties", [])
    if inaudible:
        names = ", ".join(PROPERTY_LABELS.get(p, p) for p in inaudible)
        lines.append(f"Inaudible on this pair: {names}.")
    else:
        lines.append("No property is shown inaudible by this pair.")
    compact = report.get("compact", {}).get("inaudible_properties", [])
    if compact:
        names = ", ".join(PROPERTY_LABELS.get(p, p) for p in compact)
        lines.append(f"Inaudible on the compact quotients: {names}.")
    return lines


def generate_report(command: str, report: Dict[str, Any]) -> Dict[str, Any]:
    """
    Turns a command report into a title, summary lines and notes.
    """
    if command == "verify":
        title = f"Structure checks for {_algebra_label(report['algebra'])}"
        summary_lines = _verify_lines(report)
    elif command == "intertwine":
        title = "Symbolic intertwining of fiber Laplacians"
        summary_lines = _intertwine_lines(report)
    elif command == "spectrum":
        title = "Truncated fiber spectra"
        summary_lines = _spectrum_lines(report)
    elif command == "classify":
        if "algebra" in report:
            title = f"Properties of {_algebra_label(report['algebra'])}"
        else:
            case = report["case"]
            title = f"Properties for dim z = {case['dim_z']}, dim v = {case['dim_v']}"
        summary_lines = _profile_lines(report["profile"])
    elif command == "report":
        title = "Audibility report"
        summary_lines = _audibility_lines(report)
    elif command == "history":
        title = "Run history"
        runs = report.get("runs", [report] if "id" in report else [])
        summary_lines = [f"#{r['id']} {r['created_at']} {r['command']}: {r['status']}" for r in runs]
    else:
        title = command
        summary_lines = []

    notes = []
    if command == "report":
        notes.append(f"Scope: {SCOPE.replace('_', '-')} manifolds.")
        notes.append(COMPACT_NOTE)

    return {
        "title": title,
        "ok": report.get("ok", True),
        "summary_lines": summary_lines,
        "notes": notes,
    }


def render_text(rendered: Dict[str, Any]) -> str:
    out = [rendered["title"], "=" * len(rendered["title"])]
    out.extend(f"- {line}" for line in rendered["summary_lines"])
    if rendered["notes"]:
        out.append("")
        out.extend(rendered["notes"])
    return "\n".join(out) + "\n"
