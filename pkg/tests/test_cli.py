import json
import subprocess
import sys

import pytest

from pellgf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    return [line.split("\t") for line in out.strip().splitlines()]


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "13")
    assert code == 0 and out.split() == ["13", "18", "5", "-1", "[3;1,1,1,1,6]"]
    code, out, _ = run(capsys, "solve", "3")
    assert code == 0 and out.split() == ["3", "2", "1", "1", "[1;1,2]"]


@pytest.mark.parametrize("m", ["4", "0", "1", "abc", "-5"])
def test_solve_rejects(capsys, m):
    code, out, err = run(capsys, "solve", m)
    assert code == 2 and out == ""
    assert "error" in err


def test_solve_square_message(capsys):
    _, _, err = run(capsys, "solve", "4")
    assert "m must be non-square" in err


def test_seq(capsys):
    code, out, _ = run(capsys, "seq", "2", "L", "4")
    assert code == 0 and [int(v) for _, v in rows(out)] == [1, 1, 3, 7, 17]
    _, out, _ = run(capsys, "seq", "3", "F", "3")
    assert rows(out) == [["0", "0"], ["1", "1"], ["2", "4"], ["3", "15"]]
    _, out, _ = run(capsys, "seq", "3", "F", "0")
    assert rows(out) == [["0", "0"]]


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "3", "F", "1/4")
    assert code == 0 and rows(out) == [["INTEGER", "4"], ["F_RATIO", "1"]]
    code, out, _ = run(capsys, "classify", "2", "L", "-1")
    assert code == 0 and rows(out) == [["INTEGER", "1"], ["L_RATIO_INV", "0"]]
    code, out, _ = run(capsys, "classify", "classic", "L", "1/3")
    assert code == 0 and rows(out)[0] == ["INTEGER", "3"] and len(rows(out)) >= 2
    code, out, _ = run(capsys, "classify", "classic", "L", "-3/1")
    assert code == 0 and rows(out)[0] == ["INTEGER", "-1"]


def test_classify_non_integer_exit_1(capsys):
    code, out, _ = run(capsys, "classify", "2", "F", "1/3")
    assert code == 1 and rows(out) == [["NON_INTEGER", "3/2"]]


@pytest.mark.parametrize("x", ["1/0", "1.5", "x", "1/-2"])
def test_classify_malformed_exit_2(capsys, x):
    code, _, err = run(capsys, "classify", "3", "F", x)
    assert code == 2 and err


def test_classify_bad_kind(capsys):
    code, _, _ = run(capsys, "classify", "3", "Q", "1/4")
    assert code == 2


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "3", "F", "20")
    assert code == 0
    r = rows(out)
    assert ["integer_points", "5"] in r and ["violations", "0"] in r
    assert sorted(x[1] for x in r if x[0] == "POINT") == sorted(["0/1", "1/4", "4/1", "4/15", "15/4"])


def test_sweep_radius_only(capsys):
    code, out, _ = run(capsys, "sweep", "2", "F", "12", "--radius-only")
    assert code == 0
    points = [x for x in rows(out) if x[0] == "POINT"]
    assert [p[1] for p in points] == ["0/1", "2/5"]
    assert all(int(w.split(":")[1]) % 2 == 0 for p in points for w in p[3].split(","))


def test_sweep_classic(capsys):
    code, out, _ = run(capsys, "sweep", "classic", "F", "8")
    assert code == 0 and ["violations", "0"] in rows(out)


def test_sweep_jobs_same_output(capsys):
    _, a, _ = run(capsys, "sweep", "5", "L", "40")
    _, b, _ = run(capsys, "sweep", "5", "L", "40", "--jobs", "2")
    assert a == b


def test_sweep_json_and_out(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "sweep", "3", "F", "20", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["points_tested"] == "511" and doc["violations"] == []
    assert {p["x"] for p in doc["integer_points"]} == {"0/1", "1/4", "4/1", "4/15", "15/4"}
    for p in doc["integer_points"]:
        assert isinstance(p["k"], str)


def test_sweep_needs_bound(capsys):
    code, _, _ = run(capsys, "sweep", "3", "F")
    assert code == 2


def test_identities(capsys):
    code, out, _ = run(capsys, "identities", "2", "30")
    assert code == 0 and out.strip() == "PASS 9 identities, grid n<=30"


def test_level_set(capsys):
    code, out, _ = run(capsys, "level-set", "3", "F", "4")
    assert code == 0 and set(out.split()) == {"4/1", "1/4"}
    _, out, _ = run(capsys, "level-set", "3", "F", "1")
    assert out.strip() == ""


def test_eval_partial(capsys):
    code, out, _ = run(capsys, "eval", "3", "L", "1/4", "--partial", "10")
    assert code == 0
    d = dict(rows(out))
    assert d["value"] == "8/1" and d["is_integer"] == "true" and d["within_radius"] == "true"
    from fractions import Fraction

    assert Fraction(d["partial_sum"]) + Fraction(d["difference"]) == 8


def test_eval_json_has_no_floats(capsys):
    _, out, _ = run(capsys, "eval", "2", "F", "1/5", "--format", "json", "--partial", "3")
    doc = json.loads(out)
    assert doc["value"] == "5/14"
    assert not any(isinstance(v, float) for v in doc.values())


def test_solve_json(capsys):
    _, out, _ = run(capsys, "solve", "61", "--format", "json")
    doc = json.loads(out)
    assert (doc["a"], doc["b"], doc["epsilon"]) == ("29718", "3805", "-1")


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "pellgf", "classify", "3", "L", "1/2"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert out.stdout.splitlines() == ["INTEGER\t0", "L_RATIO\t0"]
