import json

import pytest

from homgadget import cli
from homgadget.serialize import read_spec


def _run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _jsonl(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_usage_errors_exit_2(capsys):
    assert _run(capsys, "no-such-verb")[0] == 2
    assert _run(capsys, "verify-code", "--code", "missing.json")[0] == 2
    assert _run(capsys, "gadget", "teleport", "--shape", "[3,3]")[0] == 2
    assert _run(capsys, "report", "--k", "10")[0] == 2


def test_build_then_verify(tmp_path, capsys):
    out = tmp_path / "code.json"
    code, _, err = _run(capsys, "build-code", "--spec", "ogsc_9_3_4", "--certify", "--out", str(out))
    assert code == 0 and json.loads(err)["params"] == [117, 9, 4]
    code, stdout, _ = _run(capsys, "verify-code", "--code", str(out), "--max-weight", "2")
    rep = json.loads(stdout)
    assert code == 0 and rep["ok"] and rep["base_distances"] == [4, 4]
    assert rep["min_logical_weight_at_most"]["found"] is None


def test_build_certify_mismatch_exits_1(tmp_path, capsys):
    spec = read_spec("ogsc_9_3_4")
    spec["expected"] = [117, 9, 5]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    code, _, err = _run(capsys, "build-code", "--spec", str(p), "--certify")
    assert code == 1 and json.loads(err)["report"]["got"] == [117, 9, 4]


def test_gadget_certify_failure_reports_mismatch(monkeypatch, capsys):
    monkeypatch.setattr(cli, "ghz_certified", lambda s: False)
    code, _, err = _run(capsys, "gadget", "ghz", "--shape", "[3,3]", "--certify")
    assert code == 1
    assert json.loads(err)["report"]["mismatches"]


@pytest.mark.parametrize("argv", [
    ["gadget", "ghz", "--shape", "[3,3]", "--d", "4"],
    ["gadget", "teleport", "--shape", "[3,3]", "--cells", "[[1,1],[2,3]]"],
    ["gadget", "shift", "--shape", "[2,3]"],
    ["gadget", "gppm", "--spec", "ogsc_9_3_4", "--rows", "[[1]]", "--cols", "[[1,2]]"],
    ["gadget", "translate", "--spec", "ogsc_9_3_4", "--shift", "[1,2]"],
])
def test_gadgets_certify(argv, capsys):
    code, out, err = _run(capsys, *argv, "--certify")
    assert code == 0, err
    lines = _jsonl(out)
    assert lines[0].get("summary") or lines[-1].get("summary")


def test_compile_with_cost_report(tmp_path, capsys):
    circ = tmp_path / "layer.json"
    circ.write_text(json.dumps([{"g": "H", "q": [1, 1]}, {"g": "CNOT", "c": [2, 1], "t": [3, 3]},
                                {"g": "S", "q": [2, 2]}]))
    code, out, err = _run(capsys, "compile", "--circuit", str(circ), "--shape", "[3,3]", "--d", "4",
                          "--certify", "--report", "cost")
    assert code == 0, err
    rep = _jsonl(out)[-1]["cost_report"]
    assert rep["k"] == 9 and rep["rows"][-1]["measured"]


@pytest.mark.parametrize("kind", ["msd", "msi", "adder"])
def test_subroutines_certify(kind, capsys):
    code, out, _ = _run(capsys, "subroutine", kind, "--k", "4", "--certify")
    assert code == 0 and "notes" in _jsonl(out)[-1]


def test_modify_and_homomorphism(capsys):
    code, out, _ = _run(capsys, "modify", "--spec", "ogsc_9_3_4", "--puncture", "[1]", "--certify")
    rep = json.loads(out)
    assert code == 0 and rep["commutes"] and rep["d_after"] >= rep["d_before"]
    code, out, _ = _run(capsys, "homomorphism", "--spec", "ogsc_9_3_4", "--puncture", "[1]", "--format", "alist")
    assert code == 0 and json.loads(out)["verify"]


def test_single_shot_default_code(capsys):
    code, out, _ = _run(capsys, "single-shot")
    rep = json.loads(out)
    assert code == 0 and rep["sweep"]["failures"] == 0 and rep["probe"]["violations"] == []


def test_single_shot_without_metachecks(tmp_path, capsys):
    assert _run(capsys, "single-shot", "--code", "ogsc_9_3_4")[0] == 2


def test_report_with_figure(tmp_path, capsys):
    fig = tmp_path / "cost"
    code, out, err = _run(capsys, "report", "--k", "9", "16", "--layers", "1", "--figure", str(fig))
    assert code == 0
    assert "== k=9 d=4 ==" in out and "== k=16 d=8 ==" in out
    rows = json.loads(out.split("== json ==\n")[1])
    assert [r["k"] for r in rows] == [9, 16]
    path = json.loads(err)["figure"]
    assert path.endswith(".png")
    with open(path, "rb") as fh:
        assert fh.read(8) == b"\x89PNG\r\n\x1a\n"
