import json

import pytest
from click.testing import CliRunner

from susywell.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_spectrum_csv(runner):
    result = runner.invoke(main, ["spectrum", "--B", "7", "--p", "0.5", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.output.strip().split("\n")
    assert lines[0] == "n,E"
    assert len(lines) == 9
    assert lines[-1] == "7,238"


def test_spectrum_json(runner):
    result = runner.invoke(main, ["spectrum", "--B", "7", "--p", "0.5", "--format", "json"])
    assert result.exit_code == 0
    d = json.loads(result.output)
    assert d["n_max"] == 7
    assert d["asymptote"] == 240.25
    assert d["A_exact"] == "45/2"
    assert [lv["E"] for lv in d["levels"]] == [0, 58, 108, 150, 184, 210, 228, 238]


def test_spectrum_rejects_bad_parameters(runner):
    result = runner.invoke(main, ["spectrum", "--B", "1", "--p", "2"])
    assert result.exit_code == 2
    assert "0 < p < B" in result.output


def test_spectrum_deterministic(runner):
    args = ["spectrum", "--B", "7", "--p", "0.5", "--format", "json"]
    first = runner.invoke(main, args).output
    second = runner.invoke(main, args).output
    assert first == second


def test_eigenfunction_first_excited(runner):
    result = runner.invoke(
        main,
        ["eigenfunction", "--B", "7", "--p", "0.5", "-n", "1", "--grid-points", "150"],
    )
    assert result.exit_code == 0
    d = json.loads(result.output)
    assert d["form"]["sigma"] == [-15, 1]
    assert d["form"]["tau"] == [14, 1]
    assert d["form"]["coeffs"] == [[0, 1], [-29, 1], [29, 2]]
    assert len(d["samples"]) == 150
    assert d["decay_exponent"] == -13.5


def test_eigenfunction_ground_csv(runner):
    result = runner.invoke(
        main,
        ["eigenfunction", "--B", "7", "--p", "0.5", "-n", "0", "--grid-points", "120",
         "--format", "csv"],
    )
    assert result.exit_code == 0
    lines = result.output.strip().split("\n")
    assert lines[0].startswith("# n=0 sigma=-15 tau=14")
    assert lines[2] == "x,psi"
    assert len(lines) == 123


def test_eigenfunction_rejects_unbound_index(runner):
    result = runner.invoke(
        main, ["eigenfunction", "--B", "7", "--p", "0.5", "-n", "8", "--grid-points", "150"]
    )
    assert result.exit_code == 3
    assert "not normalizable" in result.output
    assert "n = 7" in result.output


def test_minimum_json(runner):
    result = runner.invoke(main, ["minimum", "--B", "7", "--p", "0.5"])
    assert result.exit_code == 0
    d = json.loads(result.output)
    assert d["V_min"] < 0.0
    assert abs(d["derivative_residual"]) <= 1e-8 * 0.5 * 240.25
    assert set(d["poly_root_probe"]) == {"exp_p_x0", "exp_x0"}


def test_figure_csv(runner):
    result = runner.invoke(
        main, ["figure", "--B", "7", "--p", "0.5", "--grid-points", "400", "--format", "csv"]
    )
    assert result.exit_code == 0
    lines = result.output.strip().split("\n")
    header = lines[0].split(",")
    assert header == ["x", "V"] + [f"E{n}" for n in range(8)] + ["asymptote"]
    rows = [ln.split(",") for ln in lines[1:]]
    v_col = [float(r[1]) for r in rows]
    assert min(v_col) < 0.0
    assert v_col[-1] == pytest.approx(240.25, abs=0.5)
    # level lines carry the ladder energy only inside their span
    e1 = [r[3] for r in rows]
    present = [c for c in e1 if c]
    assert present and all(float(c) == 58.0 for c in present)
    assert e1[0] == "" and e1[-1] == ""


def test_figure_json_spans(runner):
    result = runner.invoke(
        main, ["figure", "--B", "7", "--p", "0.5", "--grid-points", "400"]
    )
    d = json.loads(result.output)
    assert d["asymptote"] == 240.25
    assert len(d["levels"]) == 8
    for lv in d["levels"]:
        assert lv["x_start"] < lv["x_end"]


def test_validate_small_well_passes(runner):
    result = runner.invoke(
        main,
        ["validate", "--B", "0.6", "--p", "0.5", "--grid-points", "6000", "--format", "json"],
    )
    assert result.exit_code == 0
    d = json.loads(result.output)
    assert d["passed"] is True


def test_validate_deep_well_reports_hierarchy_failures(runner):
    result = runner.invoke(
        main, ["validate", "--B", "7", "--p", "0.5", "--format", "json"]
    )
    assert result.exit_code == 1
    assert "first failing check" in result.output
    payload = result.output[: result.output.rindex("}") + 1]
    d = json.loads(payload)
    failed = {c["name"] for c in d["checks"] if not c["passed"]}
    assert failed == {
        "shape-invariance",
        "spectrum-vs-oracle",
        "eigenfunction-residual",
        "orthogonality",
    }


def test_validate_perturbation_control(runner):
    result = runner.invoke(
        main,
        ["validate", "--B", "0.6", "--p", "0.5", "--grid-points", "6000",
         "--perturb-potential", "0.1", "--format", "csv"],
    )
    assert result.exit_code == 1
    assert "spectrum-vs-oracle,FAIL" in result.output


def test_validate_csv_records_probe(runner):
    result = runner.invoke(
        main,
        ["validate", "--B", "0.6", "--p", "0.5", "--grid-points", "6000", "--format", "csv"],
    )
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "check,status,detail"
    assert "poly-root-probe,RECORDED" in result.output


def test_out_file_and_env_dir(runner, tmp_path, monkeypatch):
    target = tmp_path / "spec.csv"
    result = runner.invoke(
        main,
        ["spectrum", "--B", "7", "--p", "0.5", "--format", "csv", "--out", str(target)],
    )
    assert result.exit_code == 0
    assert target.read_text().splitlines()[-1] == "7,238"

    monkeypatch.setenv("SUSYWELL_OUT_DIR", str(tmp_path))
    result = runner.invoke(
        main, ["spectrum", "--B", "7", "--p", "0.5", "--format", "csv", "--out", "bare.csv"]
    )
    assert result.exit_code == 0
    assert (tmp_path / "bare.csv").exists()
