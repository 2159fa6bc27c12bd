import json

import pytest

from app import cli


def _json(result):
    return json.loads(result.output)


def test_verify_passes(runner):
    result = runner.invoke(cli, ["verify", "--kind", "quaternion", "-p", "1", "-q", "1", "--samples", "5"])
    assert result.exit_code == 0, result.output
    data = _json(result)
    assert data["ok"] is True
    assert data["command"] == "verify"
    assert data["schema_version"] == "1.0"
    names = [c["name"] for c in data["report"]["checks"]]
    assert "sigma_orthogonality" in names and "j_intertwining" in names


def test_verify_octonion(runner):
    result = runner.invoke(cli, ["verify", "-p", "1", "-q", "1", "--samples", "3"])
    assert result.exit_code == 0, result.output


def test_verify_failure_exit_code(runner):
    result = runner.invoke(
        cli, ["verify", "--kind", "h", "-p", "1", "-q", "1", "--samples", "2", "--tol-orthogonal", "-1"]
    )
    assert result.exit_code == 1


def test_isotypic_source_verifies(runner):
    result = runner.invoke(cli, ["verify", "--kind", "quaternion", "-p", "3", "-q", "0", "--samples", "2"])
    assert result.exit_code == 0, result.output


def test_empty_algebra_is_usage_error(runner):
    result = runner.invoke(cli, ["verify", "-p", "0", "-q", "0"])
    assert result.exit_code == 2
    assert "invalid_parameters" in result.output


def test_intertwine(runner):
    result = runner.invoke(cli, ["intertwine", "-p", "1", "-q", "1", "-d", "2"])
    assert result.exit_code == 0, result.output
    report = _json(result)["report"]
    assert report["ok"] is True and report["exact"] is True
    assert report["monomials"] == 153
    assert report["coeff_c"] == "4"


def test_intertwine_with_coefficient_and_mode(runner):
    result = runner.invoke(
        cli,
        ["intertwine", "--kind", "h", "-p", "1", "-q", "1", "-d", "2", "--coeff-c", "1", "--alpha", "3,4,0"],
    )
    assert result.exit_code == 0, result.output
    report = _json(result)["report"]
    assert report["coeff_c"] == "1"
    assert report["sigma"]["nu"] == ["4/5", "-3/5", "0"]


@pytest.mark.parametrize("args", [
    ["intertwine", "--alpha", "0.5,0,0,0,0,0,0"],
    ["intertwine", "--alpha", "1,0"],
    ["intertwine", "--coeff-c", "abc"],
    ["intertwine", "--coeff-c", "0"],
    ["intertwine", "-d", "-1"],
    ["report", "--pair", "1,1-2,0"],
    ["report", "--kind", "sedenion", "--pair", "1,1:2,0"],
    ["classify", "--dim-z", "7"],
    ["classify", "--dim-z", "1", "--dim-v", "3"],
])
def test_bad_input_exits_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_oversized_degree_is_resource_error(runner):
    result = runner.invoke(cli, ["intertwine", "-d", "50"])
    assert result.exit_code == 3
    assert "resource_exceeded" in result.output


def test_oversized_truncation_is_resource_error(runner):
    assert runner.invoke(cli, ["spectrum", "-d", "40"]).exit_code == 3


def test_spectrum_pair_csv(runner):
    result = runner.invoke(
        cli, ["spectrum", "--kind", "quaternion", "-p", "1", "-q", "1", "-d", "2", "--pair", "--format", "csv"]
    )
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "algebra,p,q,alpha,degree,index,eigenvalue"
    assert len(lines) == 1 + 2 * 20


def test_spectrum_calibration(runner):
    result = runner.invoke(cli, ["spectrum", "--kind", "h", "-p", "1", "-q", "0", "-d", "3", "--calibrate", "-k", "5"])
    assert result.exit_code == 0, result.output
    report = _json(result)["report"]
    assert report["calibration"]["ok"] is True
    assert len(report["spectra"][0]["eigenvalues"]) == 5


def test_classify(runner):
    result = runner.invoke(cli, ["classify", "-p", "2", "-q", "0"])
    assert result.exit_code == 0, result.output
    report = _json(result)["report"]
    assert report["isotypic"] is True
    assert report["profile"]["commutative"] is True


def test_classify_table_lookup_text(runner):
    result = runner.invoke(cli, ["classify", "--dim-z", "7", "--dim-v", "16", "--non-isotypic", "--format", "text"])
    assert result.exit_code == 0, result.output
    assert "commutative: no" in result.output


def test_report_file_is_deterministic(runner, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        result = runner.invoke(cli, ["report", "--pair", "1,1:2,0", "--output", str(path)])
        assert result.exit_code == 0, result.output
    assert first.read_bytes() == second.read_bytes()
    data = json.loads(first.read_text())
    assert data["report"]["inaudible_properties"] == [
        "commutative",
        "weakly_symmetric_broad",
        "weakly_symmetric_narrow",
        "go_space",
    ]


def test_report_config_lists_only_report_options(runner):
    result = runner.invoke(cli, ["report", "--pair", "1,1:2,0"])
    assert result.exit_code == 0, result.output
    assert _json(result)["config"] == {"kind": "octonion", "pair": "1,1:2,0", "fmt": "json"}


def test_history_records_runs(runner):
    runner.invoke(cli, ["classify", "-p", "1", "-q", "0"])
    runner.invoke(cli, ["report", "--pair", "bad"])
    result = runner.invoke(cli, ["history", "--format", "json"])
    assert result.exit_code == 0, result.output
    runs = _json(result)["report"]["runs"]
    assert [(r["command"], r["status"], r["exit_code"]) for r in runs] == [
        ("report", "error", 2),
        ("classify", "pass", 0),
    ]
    one = runner.invoke(cli, ["history", "--id", str(runs[1]["id"]), "--format", "json"])
    assert _json(one)["report"]["config"]["p"] == 1


def test_history_unknown_id(runner):
    assert runner.invoke(cli, ["history", "--id", "999"]).exit_code == 2


def test_history_text(runner):
    runner.invoke(cli, ["classify", "-p", "1", "-q", "0"])
    result = runner.invoke(cli, ["history"])
    assert result.output.startswith("Run history\n")
    assert "classify: pass" in result.output
