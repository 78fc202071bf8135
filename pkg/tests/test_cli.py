"""The benchmark command line: formats, determinism, exit codes."""

import math

import numpy as np
import pytest

from fcclog.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_weights_nonosc(capsys):
    code, out = run_cli(capsys, "weights", "--alpha", "0", "--k", "0", "--n", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,xi_re,xi_im,eta_re,eta_im"
    assert len(lines) == 6
    row0 = lines[1].split(",")
    assert row0[0] == "0"
    assert float(row0[1]) == -4.0 and float(row0[2]) == 0.0


def test_weights_alpha1(capsys):
    code, out = run_cli(capsys, "weights", "--alpha", "1", "--k", "0", "--n", "2")
    assert code == 0
    row0 = out.strip().splitlines()[1].split(",")
    assert float(row0[1]) == pytest.approx(4 * math.log(2) - 4, abs=1e-15)


def test_weights_oscillatory_against_oracle(capsys):
    from fcclog.oracle import reference_weight_batch

    code, out = run_cli(capsys, "weights", "--alpha", "0", "--k", "10", "--n", "20")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    xi = np.array([float(r[1]) + 1j * float(r[2]) for r in rows])
    want = reference_weight_batch(20, 0.0, 10.0, tol=1e-12)
    assert np.max(np.abs(xi - want)) <= 1e-12


def test_weights_rejects_small_positive_k(capsys):
    code, _ = run_cli(capsys, "weights", "--alpha", "0", "--k", "1", "--n", "4")
    assert code == 2


def test_byte_determinism(capsys):
    _, out1 = run_cli(capsys, "weights", "--alpha", "0.3", "--k", "12.5", "--n", "32")
    _, out2 = run_cli(capsys, "weights", "--alpha", "0.3", "--k", "12.5", "--n", "32")
    assert out1 == out2
    _, t1 = run_cli(capsys, "table", "--alpha", "0", "--ks", "0,10",
                    "--ns", "8,16", "--function", "exp5")
    _, t2 = run_cli(capsys, "table", "--alpha", "0", "--ks", "0,10",
                    "--ns", "8,16", "--function", "exp5")
    assert t1 == t2


def test_integrate_plain(capsys):
    code, out = run_cli(capsys, "integrate", "--alpha", "0", "--k", "100",
                        "--n", "24", "--function", "exp5")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.startswith("alpha,k,N_used,value_re")
    cells = row.split(",")
    assert cells[6] == "oscillatory"


def test_integrate_with_refinement(capsys):
    code, out = run_cli(capsys, "integrate", "--alpha", "0", "--k", "0",
                        "--n", "8", "--function", "exp5", "--tol", "1e-12")
    assert code == 0
    cells = out.strip().splitlines()[1].split(",")
    assert int(cells[2]) > 8  # refined
    assert float(cells[5]) <= 1e-12


def test_table_cells_finite_and_sorted(capsys):
    code, out = run_cli(capsys, "table", "--alpha", "0", "--ks", "0,10,100",
                        "--ns", "12,24", "--function", "exp5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,k,abs_err,rel_err"
    rows = [line.split(",") for line in lines[1:]]
    keys = [(int(r[0]), float(r[1])) for r in rows]
    assert keys == sorted(keys)
    for r in rows:
        assert math.isfinite(float(r[2])) and float(r[2]) >= 0
        assert math.isfinite(float(r[3])) and float(r[3]) >= 0


def test_table_beta_family_uses_oracle_reference(capsys):
    code, out = run_cli(capsys, "table", "--alpha", "0", "--ks", "0",
                        "--ns", "12,24", "--function", "beta_endpoint",
                        "--beta", "0.5")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    errs = [float(r.split(",")[2]) for r in rows]
    assert errs[1] < errs[0]  # converging in N


def test_stability_nonosc(capsys):
    code, out = run_cli(capsys, "stability", "--alpha", "0", "--k", "0",
                        "--n", "50", "--epsilon", "1e-8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,k,N,n,value,bound"
    for line in lines[1:]:
        kind, k, N, n, value, bound = line.split(",")
        assert kind == "amp"
        assert float(value) <= float(bound) + 1e-9


def test_stability_k_sweep_fit(capsys):
    code, out = run_cli(capsys, "stability", "--alpha", "0", "--ks", "10,40,160",
                        "--n", "30", "--epsilon", "1e-8")
    assert code == 0
    last = out.strip().splitlines()[-1].split(",")
    assert last[0] == "kfit"
    assert float(last[4]) <= 2.25


def test_order_command(capsys):
    code, out = run_cli(capsys, "order", "--alpha", "0", "--k", "0",
                        "--ns", "12,24,48,96", "--function", "beta_endpoint",
                        "--beta", "0.5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,N,value"
    fit = lines[-1].split(",")
    assert fit[0] == "fit"
    assert 3.3 <= float(fit[2]) <= 5.0


def test_poly_function(capsys):
    code, out = run_cli(capsys, "integrate", "--alpha", "0", "--k", "0", "--n", "8",
                        "--function", "poly", "--coeffs", "0,0,1")
    assert code == 0
    # integral of x^2 log(x^2) = 2*(1/3)*(0 - 2/3)... check against the oracle
    from fcclog.oracle import reference_integral

    want = reference_integral(lambda x: x * x, 0.0, 0.0, tol=1e-12)
    cells = out.strip().splitlines()[1].split(",")
    assert abs(float(cells[3]) - want.real) <= 1e-12


def test_missing_function_coeffs_is_parameter_error(capsys):
    code, _ = run_cli(capsys, "integrate", "--alpha", "0", "--k", "0",
                      "--n", "8", "--function", "poly")
    assert code == 2


def test_unknown_function_is_parameter_error(capsys):
    code, _ = run_cli(capsys, "integrate", "--alpha", "0", "--k", "0",
                      "--n", "8", "--function", "nope")
    assert code == 2


def test_out_file_and_io_error(tmp_path, capsys):
    target = tmp_path / "w.csv"
    code = main(["weights", "--alpha", "0", "--k", "0", "--n", "3",
                 "--out", str(target)])
    assert code == 0
    assert target.read_text().startswith("n,xi_re")
    code = main(["weights", "--alpha", "0", "--k", "0", "--n", "3",
                 "--out", str(tmp_path / "missing" / "w.csv")])
    assert code == 4


def test_bad_flag_exits_2(capsys):
    assert main(["weights", "--alpha", "0", "--k", "0"]) == 2
