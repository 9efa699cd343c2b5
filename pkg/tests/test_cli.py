import json
from fractions import Fraction

import pytest

from orientcorr.cli import main
from orientcorr.csvio import read_csv


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_fail(capsys, *argv):
    with pytest.raises(SystemExit) as e:
        main(list(argv))
    err = capsys.readouterr().err
    return e.value.code, json.loads(err)


def test_pc_digits(capsys):
    _, out, _ = run(capsys, "pc", "--digits", "9")
    _, rows = read_csv(out)
    assert rows[0]["p_c"] == "0.799288221"
    assert float(rows[0]["residual"]) < 1e-8
    _, out, _ = run(capsys, "pc", "--digits", "3", "--format", "json")
    assert json.loads(out)["rows"][0]["p_c"] == "0.799"


def test_zeros_table(capsys):
    _, out, _ = run(capsys, "zeros", "--n", "4-5")
    _, rows = read_csv(out)
    assert rows[0]["endpoint_zero"] == "True"
    assert abs(float(rows[1]["p1"]) - 0.729) < 5e-4
    assert rows[1]["p2"] is None


def test_curve_json_and_out(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "curve", "--n", "6", "--grid", "4", "--format", "json", "--out", str(path))
    doc = json.loads(path.read_text())
    assert doc["table"] == "curve" and len(doc["rows"]) == 4


def test_gnm_table_rows(capsys):
    _, out, _ = run(capsys, "gnm-table", "--n", "3")
    _, rows = read_csv(out)
    assert [r["h"] for r in rows] == [1, Fraction(5, 6), Fraction(7, 12), Fraction(3, 8)]
    _, out, _ = run(capsys, "gnm-table", "--n", "5", "--m-frac", "1/4")
    _, rows = read_csv(out)
    assert [r["m"] for r in rows] == [2]


def test_q_exact(capsys):
    _, out, _ = run(capsys, "q-exact", "--l", "3", "--n", "5", "--m", "4")
    _, rows = read_csv(out)
    assert rows[0]["q"] == Fraction(119, 240)


def test_simulate_deterministic(capsys):
    args = ("simulate", "--n", "8", "--p", "0.5", "--trials", "5000", "--seed", "4")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--workers", "3")
    assert a == b


def test_decompose_and_quenched(capsys):
    _, out, _ = run(capsys, "decompose", "--n", "6", "--p", "1/2", "--p", "3/4")
    _, rows = read_csv(out)
    assert len(rows) == 2
    _, out, _ = run(capsys, "quenched", "--n", "4", "--grid", "4")
    assert "max_gnm_gap" in out


@pytest.mark.parametrize("argv,kind", [
    (["curve", "--n", "40"], "size-guard"),
    (["simulate", "--n", "8"], "precondition"),
    (["simulate", "--n", "80", "--p", "0.5"], "precondition"),
    (["q-exact", "--l", "99", "--n", "5", "--m", "2"], "precondition"),
    (["zeros", "--n", "5", "--tol", "0"], "usage"),
    (["quenched", "--n", "9"], "precondition"),
    (["nonsense"], "usage"),
])
def test_errors_are_json(capsys, argv, kind):
    code, err = run_fail(capsys, *argv)
    assert code != 0
    assert err["error"] == kind and err["message"]
