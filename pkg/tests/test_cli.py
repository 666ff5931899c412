import csv
import io
import math

import numpy as np
import pytest

from ccexp import cli
from ccexp import weights as W


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_weights_small_example(capsys):
    code, out, _ = run(capsys, "weights", "--z", "-1,0", "--L", "2")
    assert code == 0
    r = rows(out)
    assert r[0] == ["n", "omega_re", "omega_im", "rho_re", "rho_im", "phase"]
    assert len(r) == 4
    assert float(r[1][1]) == pytest.approx(0.864664716763, abs=1e-12)
    assert r[1][1] == "0.8646647167633873"


def test_weights_verify_column(capsys):
    code, out, _ = run(capsys, "weights", "--z", "-125.66,0", "--L", "256", "--verify")
    assert code == 0
    r = rows(out)
    assert r[0][-2:] == ["omega_oracle_abs_err", "rho_oracle_abs_err"]
    errs = np.array([[float(x) for x in row[-2:]] for row in r[1:]])
    assert errs.shape == (257, 2)
    assert errs.max() <= 1e-12


def test_weights_imaginary_axis_phases(capsys):
    code, out, _ = run(capsys, "weights", "--z", "0,125.66", "--L", "256")
    assert code == 0
    phase = [row[-1] for row in rows(out)[1:]]
    n0 = math.ceil(125.66) + 1
    assert set(phase[: n0 + 1]) == {"recurrence"}
    assert set(phase[n0 + 1 :]) == {"tridiag"}


def test_csv_format(capsys):
    _, out, _ = run(capsys, "weights", "--z", "-3.5e1,2", "--L", "5")
    for line in out.splitlines():
        assert not line.endswith(",") and " " not in line
    assert out.endswith("\n")
    value = rows(out)[3][3]
    assert float(value) == float("%.17g" % float(value))


def test_integrate_example(capsys):
    code, out, _ = run(capsys, "integrate", "--f", "smooth-j", "--z", "-40,0", "--L", "80", "--verify")
    assert code == 0
    r = rows(out)
    assert r[0] == ["value_re", "value_im", "coeff_tail", "oracle_abs_err"]
    assert float(r[1][3]) <= 1e-13
    assert float(r[1][2]) >= 0


def test_integrate_without_verify(capsys):
    _, out, _ = run(capsys, "integrate", "--f", "const", "--z", "-1", "--L", "4")
    r = rows(out)
    assert len(r) == 2 and len(r[0]) == 3
    assert float(r[1][0]) == pytest.approx((1 - math.exp(-2)), abs=1e-15)


def test_convergence_shape(capsys):
    code, out, _ = run(
        capsys, "convergence", "--f", "smooth-j", "--z-base", "-40,0", "--z-count", "3",
        "--L-list", "10,20,40", "--L-ref", "320",
    )
    assert code == 0
    r = rows(out)
    assert r[0] == ["L", "err_r0", "err_r1", "err_r2"]
    assert [row[0] for row in r[1:]] == ["10", "20", "40"]
    col = [float(row[1]) for row in r[1:]]
    assert col[0] > col[1] > col[2]


def test_convergence_reference_must_exceed(capsys):
    code, _, err = run(capsys, "convergence", "--f", "const", "--z-base", "-1,0", "--L-list", "10,20", "--L-ref", "20")
    assert code == 2 and "L-ref" in err


def test_instability_shape(capsys):
    code, out, _ = run(capsys, "instability", "--z", "-125.66,0", "--L", "256")
    assert code == 0
    r = rows(out)
    assert r[0] == ["n", "rho_abs_recurrence", "rho_abs_stable", "phase"]
    raw = np.array([float(row[1]) for row in r[1:]])
    stable = np.array([float(row[2]) for row in r[1:]])
    assert raw.max() > 1e3
    assert stable.max() <= 2 + 1e-10


def test_demo_laplace_heat_mode(capsys):
    code, out, _ = run(capsys, "demo-laplace", "--alpha", "0", "--T", "1", "--t-list", "0.5,1", "--N", "54")
    assert code == 0
    r = rows(out)
    assert r[0] == ["t", "U_re", "U_im", "exact_abs_err"]
    assert len(r) == 3
    assert all(float(row[3]) < 1e-5 for row in r[1:])


def test_demo_laplace_fractional(capsys):
    code, out, _ = run(capsys, "demo-laplace", "--alpha", "0.5", "--T", "3.14159", "--N", "16", "--L", "16")
    assert code == 0
    r = rows(out)
    assert r[0] == ["t", "U_re", "U_im"]
    assert abs(float(r[1][2])) < 1e-10


def test_demo_laplace_k_override_changes_result(capsys):
    _, a, _ = run(capsys, "demo-laplace", "--alpha", "0", "--T", "1", "--N", "20")
    _, b, _ = run(capsys, "demo-laplace", "--alpha", "0", "--T", "1", "--N", "20", "--k-override", "0.05")
    assert a != b


@pytest.mark.parametrize(
    "argv",
    [
        ["weights", "--z", "-1,0"],
        ["weights", "--z", "abc", "--L", "4"],
        ["weights", "--z", "1,2,3", "--L", "4"],
        ["weights", "--z", "-1,0", "--L", "0"],
        ["weights", "--z", "-1,0", "--L", "4", "--bogus"],
        ["weights", "--z", "9,0", "--L", "4"],
        ["weights", "--z", "nan,0", "--L", "4"],
        ["integrate", "--f", "nope", "--z", "-1,0", "--L", "4"],
        ["demo-laplace", "--alpha", "1.5", "--T", "1"],
        ["demo-laplace", "--alpha", "-0.5", "--T", "1"],
        ["demo-laplace", "--T", "-1"],
        ["demo-laplace", "--T", "1", "--t-list", "0,1"],
        ["nosuch"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_numerical_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(W, "PIVOT_TOL", 2.0)
    code, out, err = run(capsys, "weights", "--z", "-400,0", "--L", "64")
    assert code == 3
    assert "numerical failure" in err


def test_help_states_admissibility(capsys):
    for cmd in ("weights", "integrate", "convergence", "instability", "demo-laplace"):
        code, out, _ = run(capsys, cmd, "--help")
        assert code == 0
        assert "mu0" in out and "Re" in out


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.strip()


def test_deterministic_output(capsys):
    argv = ["convergence", "--f", "alpha:0.5", "--z-base", "0,-40", "--z-count", "2", "--L-list", "8,16", "--L-ref", "64"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--threads", "1")
    assert a == b


def test_output_file(tmp_path, capsys):
    path = tmp_path / "w.csv"
    code, out, _ = run(capsys, "weights", "--z", "-1,0", "--L", "3", "-o", str(path))
    assert code == 0 and out == ""
    assert len(rows(path.read_text())) == 5


def test_output_file_unwritable(tmp_path, capsys):
    code, _, _ = run(capsys, "weights", "--z", "-1,0", "--L", "3", "-o", str(tmp_path / "no" / "w.csv"))
    assert code == 2


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# weights run\nz = -1,0\nL = 5\n")
    code, out, _ = run(capsys, "weights", "--config", str(cfg))
    assert code == 0 and len(rows(out)) == 7
    code, out, _ = run(capsys, "weights", "--config", str(cfg), "--L", "2")
    assert code == 0 and len(rows(out)) == 4


def test_config_dashed_keys_and_flags(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("f = const\nz-base = -1,0\nz-count = 2\nL-list = 4,8\nL-ref = 16\n")
    code, out, _ = run(capsys, "convergence", "--config", str(cfg))
    assert code == 0 and rows(out)[0] == ["L", "err_r0", "err_r1"]
    cfg2 = tmp_path / "v.cfg"
    cfg2.write_text("z = -1,0\nL = 2\nverify = true\n")
    _, out, _ = run(capsys, "weights", "--config", str(cfg2))
    assert len(rows(out)[0]) == 8


@pytest.mark.parametrize("body", ["bogus = 1\n", "L = x\n", "no equals sign\n"])
def test_config_errors(tmp_path, capsys, body):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("z = -1,0\n" + body)
    code, _, err = run(capsys, "weights", "--config", str(cfg), "--L", "2")
    assert code == 2 and err


def test_config_missing_file(tmp_path, capsys):
    code, _, _ = run(capsys, "weights", "--config", str(tmp_path / "none.cfg"))
    assert code == 2


def test_parse_helpers():
    assert cli.parse_complex("-1e2,3.5") == complex(-100, 3.5)
    assert cli.parse_complex("7") == 7 + 0j
    assert cli.parse_int_list("10,20,") == [10, 20]
    assert cli.parse_float_list("0.5,1e-1") == [0.5, 0.1]
    assert cli.fmt(0.1) == "0.10000000000000001"
    assert cli.fmt(np.int64(3)) == "3"
