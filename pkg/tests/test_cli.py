import json
import subprocess
import sys

import pytest

from alcove.cli import main
from alcove.core import graph_to_json
from alcove.catalog import affine
from alcove.verify import GATE_ENV, resolve_gate
from alcove.errors import GateConflict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_json(capsys):
    code, out, _ = run(capsys, "catalog", "--type", "C~2")
    d = json.loads(out)
    assert code == 0
    assert d["delta"] == [1, 2, 1] and d["extending"] == [0, 2]
    assert d["exponents"] == [1, 3] and "highestRoot" in d and "cartan" in d


def test_catalog_dot(capsys):
    code, out, _ = run(capsys, "catalog", "--type", "C~2", "--emit", "dot")
    assert code == 0 and out.startswith("graph") and out.count("--") == 2


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog")
    assert "E~8" in json.loads(out)["types"]


def test_play_with_graph_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_to_json(affine("A~2").graph)))
    code, out, _ = run(capsys, "play", "--graph", str(path), "--start", "(-2,1,1)", "--seq", "0,0")
    assert code == 1  # the second firing hits a positive amplitude
    assert json.loads(out)["error"] == "IllegalMove"
    code, out, _ = run(capsys, "play", "--graph", str(path), "--start", "(-2,1,1)", "--seq", "0,1,2")
    assert code == 0 and json.loads(out)["end"] == ["-1", "-1", "2"]


def test_orbit_dot(capsys):
    code, out, _ = run(capsys, "orbit", "--type", "A~2", "--start", "(-2,1,1)", "--emit", "dot")
    assert code == 0 and out.count("[label=\"(") == 6


def test_strategy(capsys):
    code, out, _ = run(capsys, "strategy", "--type", "A~3", "--from", "0", "--policy", "all")
    d = json.loads(out)
    assert code == 0
    assert d["endVertex"] == 2 and d["length"] == 4 and d["policyAgreement"]
    assert d["score"] == ["-3", "-2", "-3", "-2"]


def test_weyl_translations(capsys):
    code, out, _ = run(capsys, "weyl", "--type", "A~3", "--translations")
    d = json.loads(out)
    assert code == 0
    assert [t["length"] for t in d] == [3, 4, 3]
    assert set(d[0]) == {"vertex", "length", "gamma", "matrix"}


def test_poset_and_hilbert(capsys):
    code, out, _ = run(capsys, "poset", "--type", "B~3", "--emit", "dot")
    assert code == 0 and "rank=same" in out
    code, out, _ = run(capsys, "hilbert", "--type", "B~3")
    d = json.loads(out)
    assert d["empirical"] == d["closedForm"]
    assert len(d["assignments"]) == 1
    assert d["identities"]["clauses"]["b"] == "pass"


def test_typea(capsys):
    code, out, _ = run(capsys, "typea", "--n", "4", "--check-lengths", "--bound", "3")
    d = json.loads(out)
    assert code == 0 and d["lengths"]["checked"] == 64 and d["lengths"]["match"]
    code, out, _ = run(capsys, "typea", "--window", "0,2,4")
    w = json.loads(out)["window"]
    assert w["boundary"] == [-1, 2, 2] and w["gamma"] == [0, 1] and w["length"] == 1


def test_verify_a3(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A~3")
    d = json.loads(out)
    assert code == 0 and d["ok"]
    assert d["counters"]["posetSize"] == 6
    assert d["flagged"] and d["flagged"][0]["bruteForceDegree"] == 4
    assert "timing" not in d


def test_verify_skew(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A~2-skew", "--expect-counterexample")
    d = json.loads(out)
    assert code == 0
    assert d["checks"]["diamond"]["status"] == "counterexample"
    assert d["checks"]["strategy"]["status"] == "counterexample"
    code, _, _ = run(capsys, "verify", "--type", "A~2-skew")
    assert code == 1


def test_verify_unknown_type(capsys):
    code, _, err = run(capsys, "verify", "--type", "Z9")
    assert code == 2 and "UnknownType" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2


def test_gate_env(monkeypatch, capsys):
    monkeypatch.setenv(GATE_ENV, "5")
    code, out, _ = run(capsys, "verify", "--type", "A~3")
    assert code == 0
    assert json.loads(out)["checks"]["identities"]["detail"]["clauses"]["b"] == "skipped"
    code, _, err = run(capsys, "verify", "--type", "A~3", "--gate-nodes", "10")
    assert code == 2 and "GateConflict" in err


def test_resolve_gate():
    assert resolve_gate(None, {}) == 2000
    assert resolve_gate(7, {}) == 7
    assert resolve_gate(None, {GATE_ENV: "9"}) == 9
    assert resolve_gate(9, {GATE_ENV: "9"}) == 9
    with pytest.raises(GateConflict):
        resolve_gate(3, {GATE_ENV: "9"})


def test_export_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    for p in (a, b):
        assert main(["export", "poset", "--type", "A~3", "--emit", "dot", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.count("[label=\"(") == 6 and text.count("->") == 6
    j = tmp_path / "orbit.json"
    assert main(["export", "orbit", "--type", "A~2", "--start", "(-2,1,1)", "--out", str(j)]) == 0
    assert len(json.loads(j.read_text())["nodes"]) == 6


def test_export_io_failure(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "poset", "--type", "A~3", "--out", str(tmp_path / "no" / "x"))
    assert code == 1 and json.loads(out)["error"] == "IoFailure"


def test_gate_exceeded(capsys):
    code, out, _ = run(capsys, "poset", "--type", "E~8")
    assert code == 1 and json.loads(out)["error"] == "GateExceeded"


def test_verify_workers(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A~2,B~2,G~2", "--workers", "2")
    d = json.loads(out)
    assert code == 0 and [r["target"] for r in d["reports"]] == ["A~2", "B~2", "G~2"]


def test_console_script():
    res = subprocess.run(
        [sys.executable, "-m", "alcove.cli", "verify", "--type", "A~2"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["ok"]
