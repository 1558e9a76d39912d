import json

import numpy as np
import pytest

from qtangle.cli import main
from qtangle.io import read_state, write_density
from qtangle.states import DensityMatrix, cat_state, mixture, w_state


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip().startswith("{") else None
    return code, report, out


def gen(capsys, tmp_path, name, *argv):
    path = tmp_path / name
    code, _, _ = run(capsys, "gen", *argv, "--out", str(path))
    assert code == 0
    return path


def test_gen_cat(tmp_path, capsys):
    path = gen(capsys, tmp_path, "c4.qst", "--type", "cat", "--n", "4")
    assert read_state(path).allclose(cat_state(4))


def test_gen_w2(tmp_path, capsys):
    path = gen(capsys, tmp_path, "w2.qst", "--type", "w", "--n", "2")
    np.testing.assert_allclose(read_state(path).amplitudes, [0, 2**-0.5, 2**-0.5, 0])


def test_gen_random_is_byte_identical(tmp_path, capsys):
    a = gen(capsys, tmp_path, "a.qst", "--type", "random", "--n", "3", "--seed", "9")
    b = gen(capsys, tmp_path, "b.qst", "--type", "random", "--n", "3", "--seed", "9")
    assert a.read_bytes() == b.read_bytes()


def test_gen_to_stdout(capsys):
    code = main(["gen", "--type", "singlets", "--n", "4"])
    assert code == 0
    assert capsys.readouterr().out.startswith("QST 1\nn 4\n")


def test_gen_argument_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["gen", "--type", "nope"])
    assert info.value.code == 2
    code, _, _ = run(capsys, "gen", "--type", "cat")
    assert code == 2


def test_tangle_cat4(tmp_path, capsys):
    path = gen(capsys, tmp_path, "c4.qst", "--type", "cat", "--n", "4")
    code, rep, _ = run(capsys, "tangle", "--in", str(path))
    assert code == 0
    assert abs(rep["outputs"]["tau"] - 1) < 1e-9
    assert abs(rep["outputs"]["concurrence"] - 1) < 1e-9


def test_tangle_w4(tmp_path, capsys):
    path = gen(capsys, tmp_path, "w4.qst", "--type", "w", "--n", "4")
    code, rep, _ = run(capsys, "tangle", "--in", str(path), "--oracle")
    assert code == 0
    assert rep["outputs"]["tau"] < 1e-12
    assert rep["residuals"]["oracle_discrepancy"] < 1e-12


def test_tangle_odd_n(tmp_path, capsys):
    path = gen(capsys, tmp_path, "r5.qst", "--type", "random", "--n", "5", "--seed", "1")
    code, rep, _ = run(capsys, "tangle", "--in", str(path))
    assert code == 4 and rep["exit_code"] == 4
    code, _, _ = run(capsys, "tangle", "--in", str(path), "--oracle")
    assert code == 5
    values = []
    for k in ("5", "1"):
        code, rep, _ = run(capsys, "tangle", "--in", str(path), "--oracle", "--allow-large",
                           "--last-pair-qubit", k)
        assert code == 0
        assert "tau" not in rep["outputs"]
        values.append(rep["outputs"]["oracle"])
    assert abs(values[0] - values[1]) > 1e-3


def test_tangle_io_errors(tmp_path, capsys):
    code, _, _ = run(capsys, "tangle", "--in", str(tmp_path / "missing.qst"))
    assert code == 3
    bad = tmp_path / "bad.qst"
    bad.write_text("QST 1\nn 1\n0.5 0\n0 0\n")
    code, rep, _ = run(capsys, "tangle", "--in", str(bad))
    assert code == 3 and "norm" in rep["error"]


def test_size_guard_env(tmp_path, capsys, monkeypatch):
    path = gen(capsys, tmp_path, "c6.qst", "--type", "cat", "--n", "6")
    monkeypatch.setenv("QTANGLE_MAX_QUBITS", "4")
    code, _, _ = run(capsys, "gen", "--type", "cat", "--n", "6")
    assert code == 5
    code, _, _ = run(capsys, "tangle", "--in", str(path))
    assert code == 5


def test_taumin_maximally_mixed(tmp_path, capsys):
    path = tmp_path / "mm.qdm"
    write_density(path, DensityMatrix.maximally_mixed(2))
    code, rep, _ = run(capsys, "taumin", "--in", str(path))
    assert code == 0
    assert rep["outputs"]["tau_min_analytic"] == 0
    np.testing.assert_allclose(rep["outputs"]["lambdas"], [0.25] * 4, atol=1e-14)


def test_taumin_cat_projector(tmp_path, capsys):
    path = tmp_path / "cat.qdm"
    write_density(path, DensityMatrix.from_state(cat_state(2)))
    code, rep, _ = run(capsys, "taumin", "--in", str(path), "--convex-roof", "--restarts", "2")
    assert code == 0
    assert abs(rep["outputs"]["tau_min_analytic"] - 1) < 1e-9
    assert abs(rep["outputs"]["tau_min_convex_roof"] - 1) < 1e-9
    assert rep["outputs"]["witness"][0]["qst"].startswith("QST 1")


def test_taumin_odd_n(tmp_path, capsys):
    path = tmp_path / "gw.qdm"
    write_density(path, mixture([0.5, 0.5], [cat_state(3), w_state(3)]))
    code, rep, out = run(capsys, "taumin", "--in", str(path))
    assert code == 4
    assert "--convex-roof" in out.err
    code, rep, _ = run(capsys, "taumin", "--in", str(path), "--convex-roof", "--restarts", "2")
    assert code == 0
    assert 0 <= rep["outputs"]["tau_min_convex_roof"] <= 0.5
    assert "tau_min_analytic" not in rep["outputs"]


def test_verify_ckw(capsys):
    code, rep, _ = run(capsys, "verify", "--suite", "ckw", "--trials", "200", "--seed", "1")
    assert code == 0 and rep["passed"]
    assert rep["residuals"]["max"] <= 1e-8
    assert len(rep["residuals"]["all"]) == 202


def test_verify_monotone(capsys):
    code, rep, _ = run(capsys, "verify", "--suite", "monotone", "--n", "4", "--trials", "1000", "--seed", "1")
    assert code == 0 and rep["passed"]
    assert rep["outputs"]["violations"] == 0


def test_verify_weq(capsys):
    code, rep, _ = run(capsys, "verify", "--suite", "weq", "--n", "6")
    assert code == 0 and rep["residuals"]["max"] <= 1e-9


@pytest.mark.parametrize("suite", ["oracle", "luinv", "perm"])
def test_verify_other_suites(capsys, suite):
    code, rep, _ = run(capsys, "verify", "--suite", suite, "--n", "3", "--trials", "20", "--seed", "2")
    assert code == 0 and rep["passed"]


def test_verify_failure_exit_code(capsys):
    # an impossible tolerance turns rounding residuals into failures
    code, rep, _ = run(capsys, "verify", "--suite", "ckw", "--trials", "20", "--tol", "0")
    assert code == 1 and rep["passed"] is False


def test_verify_unsupported_n(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "luinv", "--n", "5", "--trials", "2")
    assert code == 4


def test_reports_are_reproducible(capsys):
    argv = ["verify", "--suite", "monotone", "--n", "3", "--trials", "30", "--seed", "5"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    a.pop("wall_time_s")
    b.pop("wall_time_s")
    assert a == b
