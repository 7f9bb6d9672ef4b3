from pathlib import Path

import numpy as np
import pytest

from qca2.cli import main
from qca2.io_formats import read_csv

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"

FIG2_SCRIPT = SCRIPTS / "fig2.qscript"
FIG3_CONF = SCRIPTS / "fig3.conf"


@pytest.fixture
def cyclic_conf(tmp_path):
    path = tmp_path / "cyclic.conf"
    path.write_text("cells=2\nrule=right\nboundary=cyclic\neval=h_both\nsteps=10\ninitial=2\n")
    return path


class TestScriptCommand:
    def test_fig2_outputs(self, tmp_path, capsys):
        csv_path = tmp_path / "fig2.csv"
        pgm_path = tmp_path / "fig2.pgm"
        code = main([
            "script", str(FIG2_SCRIPT),
            "--out-csv", str(csv_path), "--out-pgm", str(pgm_path),
        ])
        assert code == 0
        matrix = read_csv(csv_path.read_text())
        expected = np.array([[0, 0.5, 0.5], [0, 0, 0], [1, 0.5, 0], [0, 0, 0.5]])
        assert np.max(np.abs(matrix - expected)) <= 1e-12
        lines = pgm_path.read_bytes().decode().splitlines()
        assert lines[:3] == ["P2", "3 4", "255"]
        assert lines[3] == "255 128 128"
        assert lines[5] == "0 128 255"
        assert lines[6] == "255 255 128"

    def test_csv_to_stdout_by_default(self, capsys):
        assert main(["script", str(FIG2_SCRIPT)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("state,t0,t1,t2\n")


class TestSimulateCommand:
    def test_fig3_run(self, tmp_path):
        csv_path = tmp_path / "fig3.csv"
        code = main(["simulate", str(FIG3_CONF), "--out-csv", str(csv_path)])
        assert code == 0
        matrix = read_csv(csv_path.read_text())
        assert matrix.shape == (64, 51)
        assert matrix[32, 0] == 1.0

    def test_malformed_config_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.conf"
        bad.write_text("cells=2\nrule=diagonal\nsteps=1\ninitial=0\n")
        assert main(["simulate", str(bad)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exits_two(self, capsys):
        assert main(["simulate", "/nonexistent/x.conf"]) == 2


class TestPeriodCommand:
    def test_fig3_period_found(self, capsys):
        code = main(["period", str(FIG3_CONF), "--horizon", "64"])
        assert code == 0
        out = dict(
            line.split("=") for line in capsys.readouterr().out.strip().splitlines()
        )
        assert out["found"] == "true"
        assert out["period"] == "8"
        assert int(out["columns_examined"]) == 64

    def test_not_found_exits_one(self, capsys, tmp_path):
        conf = tmp_path / "short.conf"
        conf.write_text("cells=3\nrule=right\neval=h_s_then_cn\nsteps=0\ninitial=32\n")
        code = main(["period", str(conf), "--horizon", "5"])
        assert code == 1
        assert "found=false" in capsys.readouterr().out


class TestCheckCommand:
    def test_cyclic_config_passes(self, cyclic_conf, capsys):
        assert main(["check", str(cyclic_conf)]) == 0
        out = capsys.readouterr().out
        assert "rule-unitary: pass" in out
        assert "interaction-permutation: pass" in out
        assert "translation-covariance: pass" in out

    def test_non_cyclic_skips_translation(self, tmp_path, capsys):
        conf = tmp_path / "c.conf"
        conf.write_text("cells=2\nrule=left\nsteps=1\ninitial=0\n")
        assert main(["check", str(conf)]) == 0
        assert "translation" not in capsys.readouterr().out

    def test_too_many_cells_for_dense(self, tmp_path):
        conf = tmp_path / "big.conf"
        conf.write_text("cells=8\nrule=right\nsteps=1\ninitial=0\n")
        assert main(["check", str(conf)]) == 2


class TestMatrixCommand:
    def test_dense_dump_shape(self, cyclic_conf, capsys):
        assert main(["matrix", str(cyclic_conf)]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 16
        assert all(len(line.split(",")) == 16 for line in lines)
