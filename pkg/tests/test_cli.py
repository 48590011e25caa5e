import json

import pytest

from houghton.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "[h2,h3]", "--r", "3")
    data = json.loads(out)
    assert code == 0
    assert data["offsets"] == [0, 0, 0]
    assert data["table"] == [{"gen": "a1_1", "image": "a1_2"}, {"gen": "a1_2", "image": "a1_1"}]
    code, out, _ = run(capsys, "eval", "")
    assert json.loads(out)["table"] == [] and code == 0
    code, out, _ = run(capsys, "eval", "h2", "--r", "3")
    data = json.loads(out)
    assert data["offsets"] == [-1, 1, 0]
    assert data["table"] == [{"gen": "a1_1", "image": "a2_1"}]


def test_eval_errors(capsys):
    assert run(capsys, "eval", "h2 [")[0] == 2
    assert run(capsys, "eval", "h5")[0] == 2
    assert run(capsys, "eval", "(h2')^9 s h2^9", "--ceiling", "4")[0] == 3


def test_trivial(capsys):
    code, out, _ = run(capsys, "trivial", "[h2,h3] s")
    assert code == 0 and out.strip() == "trivial (compact-check)"
    code, out, _ = run(capsys, "trivial", "h2 h3")
    assert code == 1 and out.strip() == "nontrivial (flux)"
    assert run(capsys, "trivial", "t t")[0] == 0
    assert run(capsys, "trivial", "rho12")[0] == 2
    code, out, _ = run(capsys, "trivial", "t s t s", "--json")
    assert code == 1 and json.loads(out) == {"word": "t s t s", "trivial": False, "stage": "compact-check"}


def test_flux(capsys):
    code, out, _ = run(capsys, "flux", "h3", "--r", "4")
    assert code == 0 and out.strip() == "(0, 1, 0)"
    assert run(capsys, "flux", "s")[1].strip() == "(0, 0)"
    code, out, _ = run(capsys, "flux", "h2^3 h3'", "--via", "corank", "--json")
    data = json.loads(out)
    assert code == 0 and data["flux"] == [3, -1]
    assert len(data["windows"]) == 2 and all(w["flux"] == [3, -1] for w in data["windows"])
    assert run(capsys, "flux", "rho12 h2")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--family", "AFV", "--r", "3", "--n", "4")
    assert code == 0 and out.strip().endswith("PASS (101 instances)")
    assert run(capsys, "verify", "--family", "P", "--r", "2")[0] == 2
    assert run(capsys, "verify", "--family", "AFV", "--n", "3")[0] == 2
    code, out, _ = run(capsys, "verify", "--family", "QPRIME", "--json")
    rows = json.loads(out)
    assert code == 0 and all(r["holds"] and r["witness"] is None for r in rows)


def test_verify_P_reports_r12(capsys):
    code, out, _ = run(capsys, "verify", "--family", "P", "--r", "3")
    assert code == 1
    rows = {line.split()[0]: line.split()[1:] for line in out.splitlines() if line.startswith("P.")}
    assert rows["P.r12"] == ["0/2", "FAIL"]
    assert rows["P.r4"] == ["1/1", "PASS"]


def test_rewrite(capsys):
    code, out, _ = run(capsys, "rewrite", "h2 t h2'")
    assert code == 0 and out.splitlines()[0] == "t^(h2)"
    code, out, _ = run(capsys, "rewrite", "h3' h2' h3 h2", "--json")
    data = json.loads(out)
    assert data["stats"]["area"] == 1 and data["residual"] == [0, 0]
    assert run(capsys, "rewrite", "h2")[0] == 2
    assert run(capsys, "rewrite", "h2", "--allow-flux")[0] == 0


def test_rank(capsys):
    assert run(capsys, "rank", "a1_1", "a1_2")[1].strip() == "2"
    assert run(capsys, "rank", "a1_1, a1_2")[1].strip() == "2"
    assert run(capsys, "rank")[1].strip() == "0"
    code, out, _ = run(capsys, "rank", "a1_1 a1_2 a1_1'", "a1_1 a1_2 a1_2 a1_1'", "--json")
    data = json.loads(out)
    assert data["rank"] == 1 and "edges" in data["graph"]
    assert run(capsys, "rank", "a9_1")[0] == 2


def test_growth(capsys, tmp_path):
    path = tmp_path / "g.txt"
    code, out, _ = run(capsys, "growth", "--max-len", "12", "--samples", "20", "--out", str(path))
    assert code == 0
    assert out.startswith("# seed=0")
    rows = [line.split() for line in out.splitlines()[2:]]
    assert [int(r[0]) for r in rows] == list(range(13))
    assert all(float(r[4]) <= 1 for r in rows)
    assert path.read_text().strip() == out.strip()
    assert run(capsys, "growth", "--max-len", "1")[0] == 2


def test_usage(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["eval", "s", "--r", "1"])
    assert info.value.code == 2
