import json
import subprocess
import sys

import pytest

from invhankel.cli import main, parse_complex

QUICK = ["--n", "100000", "--consistency-n", "1000"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("1.5") == 1.5
    assert parse_complex("-1,2") == complex(-1, 2)
    for bad in ("", "1,", "a", "1,2,3", ",1"):
        with pytest.raises(ValueError):
            parse_complex(bad)


@pytest.mark.parametrize("cls, num, den", [("r", 44, 135), ("r1", 1, 64)])
def test_verify_json(capsys, cls, num, den):
    code, out, _ = run(capsys, "verify", cls, *QUICK)
    d = json.loads(out)
    assert code == 0 and d["passed"] is True
    assert d["bound"] == {"num": num, "den": den}


def test_verify_text_and_out_file(capsys, tmp_path):
    path = tmp_path / "r.txt"
    code, out, _ = run(capsys, "verify", "r", *QUICK, "--format", "text", "--out", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert "44/135" in text and "PASSED" in text


def test_verify_samples_csv(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, _, _ = run(capsys, "verify", "r1", *QUICK, "--samples-csv", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "abs_t1,abs_t2,abs_h3" and len(lines) == 100001


def test_verify_json_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "r", *QUICK)
    _, b, _ = run(capsys, "verify", "r", *QUICK)
    assert a == b


def test_verify_rejects_small_grid(capsys):
    code, _, err = run(capsys, "verify", "r", "--grid-n", "8")
    assert code == 2 and "64" in err


def test_verify_failure_exit_code(capsys, monkeypatch):
    from invhankel import verification

    monkeypatch.setitem(verification._EXPECTED_MAX, "g", (1.0, 1e-9))
    code, out, _ = run(capsys, "verify", "r", *QUICK)
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_max_objective_text(capsys):
    code, out, _ = run(capsys, "max-objective", "g")
    assert code == 0
    for label in ("I. vertices", "II. edges", "III. interior"):
        assert label in out
    assert "max 2816.0000000000 (exact 2816) at (0, 1) [vertex]" in out


def test_max_objective_json_h1(capsys):
    code, out, _ = run(capsys, "max-objective", "h1", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["max_value"] == pytest.approx(588255.08, abs=1.0)
    assert d["argmax"] == pytest.approx([0.08804, 0.66270], abs=1e-3)


def test_max_objective_csv_and_monomials(capsys, tmp_path):
    path = tmp_path / "h.csv"
    code, out, _ = run(capsys, "max-objective", "h", "--format", "csv", "--dump-monomials", str(path))
    assert code == 0
    assert out.splitlines()[0] == "kind,where,s,u,value,residual"
    assert path.read_text().startswith("i,j,coeff\n")


def test_max_objective_unknown(capsys):
    code, _, _ = run(capsys, "max-objective", "k")
    assert code == 2


def test_hankel_examples(capsys):
    code, out, _ = run(capsys, "hankel", "0", "0", "-0.125", "0", "--format", "json")
    assert code == 0 and json.loads(out)["abs"] == pytest.approx(0.015625, abs=1e-15)
    _, out, _ = run(capsys, "hankel", "0", "0", "0", "0", "--format", "json")
    assert json.loads(out)["abs"] == 0
    _, out, _ = run(capsys, "hankel", "0", "0.6667", "0", "0.9333", "--format", "json")
    assert json.loads(out)["abs"] == pytest.approx(44 / 135, abs=1e-3)


def test_hankel_of_inverse(capsys):
    # a_n of -z + 2 artanh z; the inverse carries the sharp value exactly
    code, out, _ = run(capsys, "hankel", "--of-inverse", "0", str(2 / 3), "0", str(2 / 5),
                       "--format", "json")
    assert code == 0 and json.loads(out)["abs"] == pytest.approx(44 / 135, abs=1e-12)


def test_hankel_complex_and_negative_tokens(capsys):
    code, out, _ = run(capsys, "hankel", "-1,2", "0", "-.5", "0,-1", "--format", "json")
    assert code == 0
    assert json.loads(out)["coeffs"][0] == [-1.0, 2.0]


@pytest.mark.parametrize("argv", [["hankel", "0", "0", "x", "0"], ["hankel", "1", "2", "3"]])
def test_hankel_bad_input(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_sample_deterministic(capsys):
    _, a, _ = run(capsys, "sample", "r", "--n", "100000", "--seed", "7")
    _, b, _ = run(capsys, "sample", "r", "--n", "100000", "--seed", "7")
    assert a == b
    d = json.loads(a)
    assert d["sampling"]["violations"] == 0
    assert d["sampling"]["sup_random"] >= 0.99 * 44 / 135


def test_sample_r1_passes(capsys):
    code, out, _ = run(capsys, "sample", "r1", "--n", "100000", "--format", "text")
    assert code == 0 and "violations 0" in out


def test_sample_csv_stdout(capsys):
    code, out, _ = run(capsys, "sample", "r", "--n", "5", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "abs_t1,abs_t2,abs_h3" and len(out.splitlines()) == 6


def test_io_error_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "sample", "r", "--n", "10", "--out", str(tmp_path / "no" / "x.json"))
    assert code == 3 and "I/O" in err


def test_console_module_runs():
    out = subprocess.run([sys.executable, "-m", "invhankel.cli", "hankel", "0", "0", "-0.125", "0"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "0.015625" in out.stdout
