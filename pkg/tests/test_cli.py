import json
import math
import subprocess
import sys

import pytest

from reldiam.cli import run
from reldiam.serialize import load


def out_of(capsys, argv, code=0):
    rc = run(argv)
    cap = capsys.readouterr()
    assert rc == code, cap.err
    return cap.out, cap.err


def values(text):
    out = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) >= 2:
            try:
                out[parts[0]] = float(parts[1])
            except ValueError:
                pass
    return out


@pytest.fixture
def disc_json(tmp_path, capsys):
    p = tmp_path / "disc.json"
    out_of(capsys, ["body", "disc", "--out", str(p)])
    return p


def test_body_metrics(capsys):
    out, _ = out_of(capsys, ["body", "kgon", "--k", "6"])
    v = values(out)
    assert v["inradius"] == pytest.approx(math.sqrt(3) / 2, abs=1e-11)
    assert v["area"] == pytest.approx(3 * math.sqrt(3) / 2, abs=1e-11)


def test_body_errors(capsys):
    out_of(capsys, ["body", "reuleaux", "--k", "4"], code=1)
    out_of(capsys, ["body", "circle-kgon", "--k", "5"], code=1)
    out_of(capsys, ["body", "kgon", "--k", "0"], code=1)
    out_of(capsys, ["nonsense"], code=1)


def test_partition_and_evaluate(tmp_path, capsys, disc_json):
    p = tmp_path / "p4.json"
    out, _ = out_of(capsys, ["partition", "--body", str(disc_json), "--k", "4", "--out", str(p)])
    assert values(out)["d_M"] == pytest.approx(math.sqrt(2), abs=1e-11)
    assert out.count("curve ") == 4
    out, _ = out_of(capsys, ["evaluate", str(p)])
    v = values(out)
    assert v["k"] == 4 and v["d_M"] == pytest.approx(math.sqrt(2), abs=1e-11)
    out, _ = out_of(capsys, ["evaluate", str(p), "--method", "sampled", "--max-sagitta", "1e-5"])
    assert values(out)["d_M"] == pytest.approx(math.sqrt(2), abs=2e-5)


def test_evaluate_rejects_invalid(tmp_path, capsys, disc_json):
    body = json.loads(disc_json.read_text())
    half = [
        {"kind": "arc", "a": [1, 0], "b": [-1, 0], "center": [0, 0], "radius": 1},
        {"kind": "segment", "a": [-1, 0], "b": [1, 0]},
    ]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"body": body, "regions": [half, half]}))
    out, err = out_of(capsys, ["evaluate", str(p)], code=1)
    assert "violation overlap" in out
    out, _ = out_of(capsys, ["evaluate", str(p), "--force"])
    assert values(out)["d_M"] == pytest.approx(2.0)


def test_missing_and_malformed_input(tmp_path, capsys):
    out_of(capsys, ["evaluate", str(tmp_path / "none.json")], code=1)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    out_of(capsys, ["evaluate", str(bad)], code=1)
    bad.write_text('{"hello": 1}')
    out_of(capsys, ["evaluate", str(bad)], code=1)


def test_partition_needs_symmetry(tmp_path, capsys):
    p = tmp_path / "pent.json"
    out_of(capsys, ["body", "kgon", "--k", "5", "--out", str(p)])
    out_of(capsys, ["partition", "--body", str(p), "--k", "4"], code=1)


def test_bounds(tmp_path, capsys, disc_json):
    j = tmp_path / "b.json"
    out, _ = out_of(capsys, ["bounds", "--body", str(disc_json), "--k", "8", "--json", str(j)])
    assert "standard 1 lower partitions" in out
    assert "inconsistent" not in out
    assert json.loads(j.read_text())["k"] == 8
    out, _ = out_of(capsys, ["bounds", "--body", str(disc_json), "--k", "8", "--markdown", "--no-hex"])
    assert out.startswith("Bounds for") and "hex_upper" not in out


def test_optimal(tmp_path, capsys):
    p = tmp_path / "o.json"
    out, _ = out_of(capsys, ["optimal", "--k", "5", "--out", str(p)])
    assert "quotient" in out
    assert load(p).symmetry_order == 5
    out_of(capsys, ["optimal", "--k", "2"], code=1)


def test_hexify(tmp_path, capsys, disc_json):
    p = tmp_path / "h.json"
    out, _ = out_of(capsys, ["hexify", "--body", str(disc_json), "--k", "50", "--out", str(p)])
    v = values(out)
    assert v["regions"] == 50 and v["d_M"] <= v["d_k"] + 1e-9
    assert load(p).k == 50
    out_of(capsys, ["hexify", "--body", str(disc_json), "--k", "4"], code=1)


def test_counterexamples(capsys):
    out, _ = out_of(capsys, ["counterexample", "circle8"])
    assert values(out)["d_M"] == pytest.approx(0.867767478, abs=1e-9)
    out, _ = out_of(capsys, ["counterexample", "heptagon7", "--rho", "0.04"])
    assert values(out)["d_M"] < 1
    out_of(capsys, ["counterexample", "heptagon7", "--rho", "0.9"], code=1)


def test_search(tmp_path, capsys, disc_json):
    res, tr = tmp_path / "r.json", tmp_path / "t.csv"
    argv = ["search", "--body", str(disc_json), "--k", "4", "--iterations", "100", "--restarts", "1", "--out", str(res), "--trace", str(tr)]
    out, _ = out_of(capsys, argv)
    assert values(out)["best_value"] == pytest.approx(math.sqrt(2), abs=1e-9)
    assert json.loads(res.read_text())["best_value"] == pytest.approx(math.sqrt(2))
    assert tr.read_text().startswith("iteration,value")
    out_of(capsys, argv[:5] + ["--iterations", "0"], code=1)
    out_of(capsys, argv[:5] + ["--mode", "partition", "--iterations", "50", "--restarts", "1"])


def test_render(tmp_path, capsys):
    s, svg = tmp_path / "c8.json", tmp_path / "c8.svg"
    out_of(capsys, ["counterexample", "circle8", "--out", str(s)])
    out_of(capsys, ["render", str(s), "--out", str(svg), "--title", "circle"])
    assert svg.read_text().count("<path") == 8


def test_repro_writes_reports(tmp_path, capsys):
    out, _ = out_of(capsys, ["repro", "circle8", "--out-dir", str(tmp_path)])
    assert "circle8: PASS" in out
    assert json.loads((tmp_path / "circle8.json").read_text())["passed"] is True
    assert (tmp_path / "circle8.md").read_text().startswith("# circle8")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "reldiam", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "counterexample" in r.stdout
