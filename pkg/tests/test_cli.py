import json
import math
import subprocess
import sys

import numpy as np
import pytest

from gipower import (
    CovarianceMatrix,
    from_standard_form,
    gip_closed_form,
    log_negativity,
    mean_photon_A,
    pt_min_symplectic_eigenvalue,
    StandardForm,
    tmsv,
)
from gipower.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestIp:
    def test_pure_tmsv_flags(self, capsys):
        code, out = run_cli(
            capsys, "ip", "--a", "2", "--b", "2", "--c", "1.7320508", "--d", "-1.7320508"
        )
        assert code == 0
        report = json.loads(out)
        assert report["value"] == pytest.approx(0.75, abs=1e-6)
        assert report["branch"] == "pure"

    def test_standard_form_flags(self, capsys):
        code, out = run_cli(capsys, "ip", "--a", "2", "--b", "3", "--c", "1", "--d", "-1")
        assert code == 0
        report = json.loads(out)
        assert report["value"] == pytest.approx(0.0833333, abs=1e-6)
        assert report["invariants"]["D"] == pytest.approx(25.0, abs=1e-9)
        assert report["separable"] is True
        assert report["n_bar_A"] == pytest.approx(0.5)

    def test_product_state_file(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        cm = from_standard_form(StandardForm(2.0, 3.0, 0.0, 0.0))
        path.write_text(json.dumps(cm.to_dict()))
        code, out = run_cli(capsys, "ip", "--input", str(path))
        assert code == 0
        report = json.loads(out)
        assert report["value"] == pytest.approx(0.0, abs=1e-12)
        assert report["separable"] is True

    def test_unphysical_input_exit_2(self, capsys):
        code, _ = run_cli(capsys, "ip", "--a", "2", "--b", "3", "--c", "2.4", "--d", "-2.4")
        assert code == 2

    def test_missing_flags_exit_2(self, capsys):
        code, _ = run_cli(capsys, "ip", "--a", "2", "--b", "3")
        assert code == 2

    def test_missing_file_exit_2(self, capsys):
        code, _ = run_cli(capsys, "ip", "--input", "/nonexistent/state.json")
        assert code == 2

    def test_malformed_file_exit_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _ = run_cli(capsys, "ip", "--input", str(path))
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out = run_cli(capsys, "ip", "--a", "2", "--b", "2", "--c", "0", "--d", "0",
                            "--out", str(path))
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["value"] == pytest.approx(0.0, abs=1e-12)


class TestVerify:
    def test_small_run_passes(self, capsys):
        code, out = run_cli(capsys, "verify", "--seed", "3", "--n", "5", "--tol", "1e-3")
        assert code == 0
        assert "PASS" in out
        assert "max |closed - oracle|" in out


class TestSample:
    def test_fig2_schema_and_revalidation(self, capsys, tmp_path):
        path = tmp_path / "fig2.csv"
        code, _ = run_cli(capsys, "sample", "--seed", "9", "--n", "25", "--which", "fig2",
                          "--out", str(path))
        assert code == 0
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "n_bar_A,P_G,separable,sql,heisenberg,a,b,c,d"
        assert len(lines) == 26
        for line in lines[1:]:
            fields = line.split(",")
            n_bar, p_g = float(fields[0]), float(fields[1])
            sql, heis = float(fields[3]), float(fields[4])
            a, b, c, d = (float(x) for x in fields[5:9])
            cm = from_standard_form(StandardForm(a, b, c, d))
            assert n_bar == pytest.approx(mean_photon_A(cm), abs=1e-9)
            assert p_g == pytest.approx(gip_closed_form(cm).value, abs=1e-9)
            assert sql == pytest.approx(n_bar, abs=1e-9)
            assert heis == pytest.approx(n_bar * (n_bar + 1), abs=1e-9)
            assert fields[2] in ("true", "false")

    def test_fig3_schema_and_revalidation(self, capsys, tmp_path):
        path = tmp_path / "fig3.csv"
        code, _ = run_cli(capsys, "sample", "--seed", "9", "--n", "25", "--which", "fig3",
                          "--out", str(path))
        assert code == 0
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "E_N,ratio,nu_tilde,lower,upper,a,b,c,d"
        assert len(lines) == 26
        for line in lines[1:]:
            fields = [float(x) for x in line.split(",")]
            e_n, ratio, nu = fields[0], fields[1], fields[2]
            a, b, c, d = fields[5:9]
            cm = from_standard_form(StandardForm(a, b, c, d))
            assert e_n == pytest.approx(log_negativity(cm), abs=1e-9)
            assert nu == pytest.approx(pt_min_symplectic_eigenvalue(cm), abs=1e-9)
            assert ratio == pytest.approx(
                gip_closed_form(cm).value / mean_photon_A(cm), abs=1e-9
            )
            assert e_n > 0

    def test_byte_identical_across_runs_and_threads(self, capsys, tmp_path):
        paths = [tmp_path / f"out{i}.csv" for i in range(3)]
        run_cli(capsys, "sample", "--seed", "4", "--n", "30", "--which", "fig2",
                "--out", str(paths[0]))
        run_cli(capsys, "sample", "--seed", "4", "--n", "30", "--which", "fig2",
                "--out", str(paths[1]))
        run_cli(capsys, "sample", "--seed", "4", "--n", "30", "--which", "fig2",
                "--out", str(paths[2]), "--threads", "4")
        blobs = [p.read_bytes() for p in paths]
        assert blobs[0] == blobs[1] == blobs[2]

    def test_thread_count_env_var(self, capsys, tmp_path, monkeypatch):
        base = tmp_path / "base.csv"
        via_env = tmp_path / "env.csv"
        run_cli(capsys, "sample", "--seed", "8", "--n", "20", "--which", "fig3",
                "--out", str(base))
        monkeypatch.setenv("GIPOWER_THREADS", "3")
        run_cli(capsys, "sample", "--seed", "8", "--n", "20", "--which", "fig3",
                "--out", str(via_env))
        assert base.read_bytes() == via_env.read_bytes()


class TestBounds:
    def test_schema_and_revalidation(self, capsys, tmp_path):
        path = tmp_path / "bounds.csv"
        code, _ = run_cli(capsys, "bounds", "--grid", "40", "--out", str(path))
        assert code == 0
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "nu_tilde,E_N,upper,lower,branch"
        assert len(lines) == 41
        from gipower import lower_bound, nu_zero, upper_bound

        for line in lines[1:]:
            fields = line.split(",")
            nu, e_n, upper, lower = (float(x) for x in fields[:4])
            assert 0 < nu < 1
            assert e_n == pytest.approx(-math.log(nu), abs=1e-9)
            assert upper == pytest.approx(float(upper_bound(nu)), abs=1e-9)
            assert lower == pytest.approx(float(lower_bound(nu)), abs=1e-9)
            assert fields[4] == ("branch1" if nu > nu_zero() else "branch2")

    def test_bad_grid_exit_2(self, capsys, tmp_path):
        code, _ = run_cli(capsys, "bounds", "--grid", "0", "--out", str(tmp_path / "x.csv"))
        assert code == 2


class TestFamily:
    def test_tmsv_round_trip(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        code, _ = run_cli(capsys, "family", "--kind", "tmsv", "--params", "2", "--out", str(path))
        assert code == 0
        cm = CovarianceMatrix.from_dict(json.loads(path.read_text()))
        assert np.allclose(cm.sigma, from_standard_form(tmsv(2.0)).sigma, atol=0)

    def test_two_parameter_family(self, capsys, tmp_path):
        path = tmp_path / "state.json"
        code, _ = run_cli(capsys, "family", "--kind", "separable_extremal",
                          "--params", "3,101", "--out", str(path))
        assert code == 0
        cm = CovarianceMatrix.from_dict(json.loads(path.read_text()))
        assert gip_closed_form(cm).value == pytest.approx(200 / 204, abs=1e-9)

    def test_unknown_kind_exit_2(self, capsys, tmp_path):
        code, _ = run_cli(capsys, "family", "--kind", "bogus", "--out", str(tmp_path / "x.json"))
        assert code == 2

    def test_unphysical_params_exit_2(self, capsys, tmp_path):
        code, _ = run_cli(capsys, "family", "--kind", "entangled_st_nu",
                          "--params", "2,3,0.1", "--out", str(tmp_path / "x.json"))
        assert code == 2

    def test_bad_params_exit_2(self, capsys, tmp_path):
        code, _ = run_cli(capsys, "family", "--kind", "tmsv", "--params", "abc",
                          "--out", str(tmp_path / "x.json"))
        assert code == 2


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "gipower", "ip", "--a", "2", "--b", "3", "--c", "1", "--d", "-1"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["value"] == pytest.approx(1 / 12, abs=1e-9)
