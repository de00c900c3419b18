"""Golden-file tests for the command line.  Regenerate with
``python3 tests/test_cli.py --regen`` after an intended output change."""
import json
import sys
from pathlib import Path

import pytest

from qheisenberg.cli import main

GOLDEN = Path(__file__).parent / "golden"

# name -> (argv, expected exit code)
CASES = {
    "canon": (["canon", "--preset", "frtbar", "--N", "2"], 0),
    "canon_spec": (["canon", "--spec", "L_up:1,1"], 0),
    "degree": (["degree", "--preset", "frtbar", "--N", "3", "--m", "3"], 0),
    "center": (["center", "--preset", "frtbar", "--N", "2", "--m", "3"], 0),
    "normal_order": (["normal-order", "--preset", "frt", "--N", "2", "zs0*z0"], 0),
    "central": (["central", "--preset", "frt", "--N", "2", "--m", "3", "z0^3"], 0),
    "poisson_oracle": (["poisson-oracle", "--N", "2", "--m", "3", "z0", "zs0"], 0),
    "leaf_dim": (["leaf-dim", "--N", "2", "--point", "1,1,1,1"], 0),
    "good_point": (["good-point", "--N", "3", "--point", "0,1,1,1,1,0"], 0),
    "flow": (["flow", "--N", "2", "--point", "1,1,1,1", "--k", "0", "--lam", "2"], 0),
    "rep_build": (["rep", "build", "--N", "2", "--m", "3"], 0),
    "rep_verify": (["rep", "verify", "--N", "2", "--m", "3"], 0),
    "rep_commutant": (["rep", "commutant", "--N", "2", "--m", "3"], 0),
    "dkp_check": (["dkp", "check", "--N", "2", "--m", "3", "--point", "1,1,1,1"], 0),
    "dkp_sweep": (["dkp", "sweep", "--N", "2", "--m", "3", "--coord-range=-1..1", "--oracle"], 0),
    "dkp_check_oh": (["dkp", "check", "--preset", "oh", "--N", "2", "--m", "3", "--point", "1,1,1,1"], 0),
    "coeffs_a": (["coeffs", "a", "--n", "3"], 0),
    "coeffs_d": (["coeffs", "d", "--i", "3", "--s", "3", "--m", "3"], 0),
}


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name", sorted(CASES))
@pytest.mark.parametrize("fmt", ["json", "txt"])
def test_golden(name, fmt, capsys):
    argv, code = CASES[name]
    if fmt == "json":
        argv = argv + ["--json"]
    got_code, out = run(argv, capsys)
    assert got_code == code
    assert out == (GOLDEN / f"{name}.{fmt}").read_text()
    if fmt == "json":
        json.loads(out)


def test_json_byte_stable(capsys):
    argv = CASES["dkp_sweep"][0] + ["--json"]
    _, a = run(argv, capsys)
    _, b = run(argv, capsys)
    assert a == b


def test_documented_examples(capsys):
    assert run(["degree", "--preset", "frtbar", "--N", "3", "--m", "3"], capsys) == (0, "9\n")
    code, out = run(["dkp", "check", "--N", "2", "--m", "3", "--point", "1,1,1,1"], capsys)
    assert code == 0 and "ok, rep_dim 3, leaf_dim 2" in out
    code, out = run(["normal-order", "--preset", "frt", "--N", "2", "zs0*z0"], capsys)
    assert out.strip() == "z0*zs0 - (q^2-1)*z1*zs1"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["normal-order", "--preset", "frt", "--N", "2", "z0^-1"], 2),  # not invertible
        (["normal-order", "--preset", "frt", "--N", "2", "z0 *"], 1),  # syntax
        (["no-such-command"], 1),
        (["degree", "--N", "2"], 1),  # no preset
        (["rep", "build", "--N", "2", "--m", "4"], 2),  # even m
        (["coeffs", "d", "--i", "1", "--s", "1", "--m", "3"], 2),  # q^2 - 1 has no limit
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_out_file(tmp_path, capsys):
    out = tmp_path / "deg.json"
    assert main(["degree", "--preset", "frtbar", "--N", "2", "--m", "3", "--json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())


def test_matrix_file(tmp_path, capsys):
    f = tmp_path / "h.json"
    f.write_text("[[0, -2], [2, 0]]")
    assert run(["degree", "--preset", "torus", "--matrix", str(f), "--m", "3"], capsys) == (0, "3\n")


if __name__ == "__main__" and "--regen" in sys.argv:
    import contextlib
    import io

    GOLDEN.mkdir(exist_ok=True)
    for name, (argv, _) in CASES.items():
        for fmt, extra in (("json", ["--json"]), ("txt", [])):
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                main(argv + extra)
            (GOLDEN / f"{name}.{fmt}").write_text(buf.getvalue())
