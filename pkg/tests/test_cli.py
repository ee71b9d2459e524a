import json

import pytest

from qvol.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def poset_file(tmp_path):
    def make(n, covers, omega=None):
        d = {"n": n, "covers": covers}
        if omega:
            d["omega"] = omega
        p = tmp_path / "poset.json"
        p.write_text(json.dumps(d))
        return str(p)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out.out)


def test_qvol_of_a_vee(capsys, poset_file):
    code, data = run_json(capsys, "qvol", "--poset", poset_file(3, [[1, 3], [2, 3]]))
    assert code == EXIT_OK and data["passed"]
    # L(P) = {123, 213}: maj 0 and 1
    assert data["value"]["text"] == "(1)/(1 + q + q^2)"


def test_qvol_box_and_decomposition(capsys, poset_file):
    path = poset_file(3, [[1, 2]], [2, 1, 3])
    assert run(capsys, "qvol", "--poset", path, "--r", "2", "--s", "0")[0] == EXIT_OK
    assert run(capsys, "qvol", "--poset", path, "--method", "decomposition")[0] == EXIT_OK


def test_simplex(capsys):
    code, data = run_json(capsys, "simplex", "--perm", "2,1")
    assert code == EXIT_OK and data["value"]["text"] == "(q)/(1 + q)"
    assert run(capsys, "simplex", "--perm", "3,1,2", "--r", "3", "--s", "1")[0] == EXIT_OK


def test_lin_ext(capsys, poset_file):
    code, data = run_json(capsys, "lin-ext", "--poset", poset_file(3, [[1, 3]]))
    assert code == EXIT_OK
    assert sorted(tuple(r["word"]) for r in data["value"]) == [(1, 2, 3), (1, 3, 2), (2, 1, 3)]


def test_forest_and_selberg(capsys):
    assert run(capsys, "forest", "--parents", "3,3,0", "--a", "1,0,2")[0] == EXIT_OK
    for route in ("direct", "closed", "poset", "askey"):
        code, _ = run(capsys, "selberg", "--n", "2", "--alpha", "1", "--beta", "1", "--m", "1", "--route", route)
        assert code == EXIT_OK


def test_tableau_commands(capsys):
    assert run(capsys, "schur-poset", "--n", "3", "--lambda", "[2,1]", "--mu", "1")[0] == EXIT_OK
    assert run(capsys, "rpp", "--n", "2", "--lambda", "1", "--mu", "1", "--series-degree", "8")[0] == EXIT_OK
    assert run(capsys, "gt", "--n", "2", "--lambda", "1")[0] == EXIT_OK
    assert run(capsys, "warnaar", "--n", "2", "--alpha", "2")[0] == EXIT_OK
    assert run(capsys, "gansner", "--n", "2", "--alpha", "1")[0] == EXIT_OK


def test_gansner_with_trace_weight_reports_failure(capsys):
    code, out = run(capsys, "gansner", "--n", "2", "--alpha", "2")
    assert code == EXIT_FAIL and "FAILS" in out.out


def test_ehrhart(capsys, poset_file):
    path = poset_file(2, [[1, 2]])
    code, data = run_json(capsys, "ehrhart", "--poset", path, "--m", "1")
    assert code == EXIT_OK and data["value"]["text"] == "1 + q + q^2"
    assert run(capsys, "ehrhart", "--poset", path, "--fit")[0] == EXIT_OK
    code, out = run(capsys, "ehrhart", "--poset", path, "--series")
    assert code == EXIT_OK and "(t;q)_3" in out.out
    bad = poset_file(2, [[1, 2]], [2, 1])
    assert run(capsys, "ehrhart", "--poset", bad, "--m", "1")[0] == EXIT_USAGE


def test_bad_input(capsys, poset_file, tmp_path):
    assert run(capsys, "simplex", "--perm", "1,1")[0] == EXIT_USAGE
    assert run(capsys, "qvol", "--poset", str(tmp_path / "missing.json"))[0] == EXIT_USAGE
    assert run(capsys, "qvol", "--poset", poset_file(2, [[1, 2], [2, 1]]))[0] == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["gt", "--n", "2", "--lambda", "1,2"])


def test_enumeration_cap(capsys, poset_file):
    path = poset_file(6, [])
    code, out = run(capsys, "lin-ext", "--poset", path, "--max-extensions", "100")
    assert code == EXIT_CAP and "qvol:" in out.err


def test_verify_all_subset(capsys, monkeypatch):
    monkeypatch.setenv("QVOL_THREADS", "1")
    code, out = run(capsys, "verify-all", "--criteria", "1,2")
    lines = out.out.splitlines()
    assert code == EXIT_OK
    assert lines[0].startswith("[PASS] criterion  1") and lines[1].startswith("[PASS] criterion  2")
    assert run(capsys, "verify-all", "--criteria", "99")[0] == EXIT_USAGE
