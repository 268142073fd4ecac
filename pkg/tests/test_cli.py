import json
import math
import os

import pytest

from szl.cli import main


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SZL_CACHE", str(tmp_path / "cache"))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def test_group_info_trichotomy_table(workdir, capsys):
    rep = run_json(capsys, "group-info", "--group", "gamma0plus:5")
    golden_sq = ((1 + math.sqrt(5.0)) / 2.0) ** 2
    assert rep["outputs"]["trichotomy"] == "GeodesicSmaller"
    assert abs(rep["outputs"]["A"] - golden_sq) < 1e-12
    rep6 = run_json(capsys, "group-info", "--group", "gamma0plus:6")
    assert rep6["outputs"]["trichotomy"] == "ScatteringSmaller"
    assert rep6["outputs"]["A"] == 2.0
    rep7 = run_json(capsys, "group-info", "--group", "gamma0:7")
    assert rep7["outputs"]["A"] == 4.0
    assert rep7["outputs"]["g_ratio_sq"] == 4.0
    assert rep7["diagnostics"]["empirical_abscissa"] is not None


def test_eval_phi_functional_equation(workdir, capsys):
    a = run_json(capsys, "eval", "--group", "psl2z", "--target", "phi", "--s", "0.7,3")
    b = run_json(capsys, "eval", "--group", "psl2z", "--target", "phi", "--s", "0.3,-3")
    va = complex(a["outputs"]["re"], a["outputs"]["im"])
    vb = complex(b["outputs"]["re"], b["outputs"]["im"])
    assert abs(va * vb - 1.0) < 1e-8


def test_eval_h_and_x(workdir, capsys):
    rep = run_json(capsys, "eval", "--group", "psl2z", "--target", "H", "--s", "2,0")
    from szl.numerics import riemann_zeta

    assert abs(rep["outputs"]["re"] - (riemann_zeta(3.0) / riemann_zeta(4.0)).real) < 1e-6
    rep = run_json(
        capsys, "eval", "--group", "psl2z", "--target", "x_mk", "--k", "1", "--s", "20,0"
    )
    assert abs(rep["outputs"]["re"] - 1.0) < 0.01


def test_count_h(workdir, capsys):
    rep = run_json(capsys, "count", "--group", "psl2z", "--target", "H", "--T", "15")
    assert rep["outputs"]["n_ver"] == 3
    assert abs(rep["outputs"]["n_hor"] - 0.75) < 1e-5
    rep7 = run_json(capsys, "count", "--group", "psl2z", "--target", "H", "--T", "7")
    assert rep7["outputs"]["n_ver"] == 0


def test_count_zeta(workdir, capsys):
    rep = run_json(capsys, "count", "--group", "psl2z", "--target", "riemann_zeta", "--T", "32")
    assert rep["outputs"]["net_count"] == 4
    assert rep["outputs"]["oracle_zero_count"] == 4


def test_predict_comparison_and_weyl(workdir, capsys):
    rep = run_json(capsys, "predict", "--group", "gamma0plus:5", "--law", "comparison")
    assert abs(rep["outputs"]["residual_TlogT"]) < 1e-12
    assert abs(rep["outputs"]["residual_T"]) < 1e-12
    rep = run_json(capsys, "predict", "--group", "psl2z", "--law", "weyl_new", "--T", "100")
    assert abs(rep["outputs"]["expansion"]["T"] - (1 - math.log(2.0)) / math.pi) < 1e-12


def test_psi(workdir, capsys):
    rep = run_json(capsys, "psi", "--group", "psl2z", "--x", "1e4")
    assert 0.8 < rep["outputs"]["psi_over_x"] < 1.2
    rep0 = run_json(capsys, "psi", "--group", "psl2z", "--x", "5")
    assert rep0["outputs"]["psi"] == 0.0


def test_idempotent_reports(workdir, capsys):
    args = ("group-info", "--group", "gamma0plus:6")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)  # second run comes from the cache
    assert first == second


def test_csv_format(workdir, capsys):
    code, out = run(
        capsys, "eval", "--group", "psl2z", "--target", "f", "--s", "0.5,0", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,value,unit,provenance"
    assert any(line.startswith("re,") for line in lines)


def test_plot_output(workdir, capsys):
    code, _ = run(
        capsys,
        "count", "--group", "psl2z", "--target", "H", "--T", "12", "--plot",
        "--plot-file", "fig.svg",
    )
    assert code == 0
    assert os.path.exists("fig.svg")
    with open("fig.svg", "r", encoding="utf-8") as fh:
        assert "<svg" in fh.read(2000)


def test_out_file_and_plot_sibling(workdir, capsys):
    code, _ = run(
        capsys,
        "psi", "--group", "psl2z", "--x", "5000", "--out", "report.json", "--plot",
    )
    assert code == 0
    with open("report.json", "r", encoding="utf-8") as fh:
        rep = json.load(fh)
    assert rep["command"] == "psi"
    assert os.path.exists("report.svg")


def test_config_defaults(workdir, capsys):
    cfg = workdir / "szl.cfg"
    cfg.write_text("census-cutoff = 2000\n# comment\nformat = json\n")
    rep = run_json(
        capsys, "psi", "--group", "psl2z", "--x", "1000", "--config", str(cfg)
    )
    assert rep["diagnostics"]["cutoffs"]["census"] == 2000.0


def test_unknown_group_error(workdir, capsys):
    code = main(["group-info", "--group", "nope"])
    assert code == 2


def test_compact_l0_flag(workdir, capsys):
    rep = run_json(
        capsys, "group-info", "--group", "compact:2", "--l0", "1.0", "--m0", "1"
    )
    assert abs(rep["outputs"]["A"] - math.e) < 1e-12
    assert rep["outputs"]["volume"] == pytest.approx(4 * math.pi)
