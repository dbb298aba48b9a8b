import json
import subprocess
import sys

import numpy as np
import pytest

from entmix import datasets as ds
from entmix.cli import main
from entmix.states import bell_state, maximally_mixed, werner_state


def matrix_file(tmp_path, rho, name="m.json"):
    p = tmp_path / name
    p.write_text(json.dumps(ds.dump_matrix(rho)))
    return str(p)


class TestAnalyze:
    def test_bell_json(self, tmp_path, capsys):
        assert main(["analyze", matrix_file(tmp_path, bell_state())]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["bundle"] == "0.75-1" and out["ppt"] == 1
        assert out["min_pt_eigenvalue"] == pytest.approx(-0.5)
        assert len(out["wootters_lambdas"]) == 4

    def test_mixed_csv(self, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["analyze", matrix_file(tmp_path, maximally_mixed()), "--format", "csv", "--out", str(out)]) == 0
        _, data, rows = ds.read_csv(out)
        assert rows[0]["bundle"] == "separable"
        assert all(int(rows[0][k]) == 0 for k in ds.FLAG_COLUMNS)

    def test_werner(self, tmp_path, capsys):
        main(["analyze", matrix_file(tmp_path, werner_state(0.8))])
        out = json.loads(capsys.readouterr().out)
        assert out["concurrence"] == pytest.approx(0.7, abs=1e-12)
        assert out["tangle"] == pytest.approx(0.49, abs=1e-12)

    @pytest.mark.parametrize("rho,reason", [
        (np.eye(4) * 1.01 / 4, "trace"),
        (np.diag([0.6, 0.5, 0.0, -0.1]), "psd"),
        (np.eye(4) / 4 + np.triu(np.ones((4, 4)), 1) * 1e-3, "hermiticity"),
    ])
    def test_invalid_state(self, tmp_path, capsys, rho, reason):
        assert main(["analyze", matrix_file(tmp_path, rho)]) == 2
        assert reason in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        p = tmp_path / "x.json"
        p.write_text("[")
        assert main(["analyze", str(p)]) == 2
        assert "parse" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["analyze", str(tmp_path / "nope.json")]) == 1


class TestUsage:
    @pytest.mark.parametrize("argv", [
        [],
        ["bogus"],
        ["campaign"],
        ["campaign", "--out", "x.csv", "--figure", "fig9"],
        ["campaign", "--out", "x.csv", "--n", "-3"],
        ["memms-grid", "--out", "x.csv", "--n", "abc"],
    ])
    def test_exit_one(self, argv):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 1

    def test_semantic_usage(self, tmp_path):
        assert main(["campaign", "--n", "0", "--out", str(tmp_path / "a.csv")]) == 1
        assert main(["memms-grid", "--n", "1", "--out", str(tmp_path / "a.csv")]) == 1
        assert main(["lptps-line", "--n", "1", "--out", str(tmp_path / "a.csv")]) == 1

    def test_unwritable(self, tmp_path):
        assert main(["campaign", "--n", "5", "--out", str(tmp_path / "no" / "dir.csv")]) == 1


class TestCampaign:
    def test_fig1a(self, tmp_path, capsys):
        out = tmp_path / "f.csv"
        assert main(["campaign", "--n", "300", "--figure", "fig1a", "--out", str(out)]) == 0
        summary = json.loads(capsys.readouterr().out)
        meta, data, _ = ds.read_csv(out)
        assert list(data) == ["id", "seed", "family", "series", "sV1", "sV2", "sV", "eof", "bundle"]
        assert meta["seed"] == "7"
        assert summary["violations"]["triangle_left"] == 0
        assert sum(summary["bundle_counts"].values()) == 300

    def test_svg(self, tmp_path, capsys):
        out = tmp_path / "g.csv"
        assert main(["campaign", "--n", "200", "--figure", "fig3b", "--out", str(out), "--svg"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["points_above_line"] == 0
        svg = (tmp_path / "g.svg").read_text()
        assert svg.lstrip().startswith("<?xml") and "<svg" in svg

    def test_deterministic(self, tmp_path):
        files = []
        for name in ("a", "b"):
            p = tmp_path / f"{name}.json"
            main(["campaign", "--n", "100", "--seed", "5", "--format", "json", "--out", str(p)])
            files.append(p.read_bytes())
        assert files[0] == files[1]


class TestGrids:
    def test_memms_grid(self, tmp_path, capsys):
        out = tmp_path / "m.csv"
        assert main(["memms-grid", "--n", "2", "--out", str(out)]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["rows"] == 4 and summary["total_violations"] == 0
        _, data, _ = ds.read_csv(out)
        corners = set(zip(np.round(data["sL1"], 9), np.round(data["sL2"], 9), np.round(data["tangle"], 9)))
        assert (1.0, 1.0, 1.0) in corners

    def test_lptps_line(self, tmp_path, capsys):
        out = tmp_path / "l.csv"
        assert main(["lptps-line", "--n", "11", "--out", str(out)]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["rows"] == 11 and summary["max_line_residual"] <= 1e-9


class TestFuzz:
    def test_zero(self, capsys):
        assert main(["fuzz", "--n", "0"]) == 0
        assert json.loads(capsys.readouterr().out)["ok"]

    def test_inject(self, tmp_path, capsys):
        bad = matrix_file(tmp_path, np.eye(4) * 1.01 / 4, "bad.json")
        good = matrix_file(tmp_path, bell_state(), "good.json")
        assert main(["fuzz", "--n", "200", "--inject", bad, "--inject", good]) == 0
        report = json.loads(capsys.readouterr().out)
        assert [r["reason"] for r in report["rejected"]] == ["trace"]
        assert report["n_boundary"] >= 1 and report["total_violations"] == 0


def test_console_script_module(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "entmix.cli", "fuzz", "--n", "0"], capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "entmix.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "entmix" in proc.stdout
