from __future__ import annotations

import io
import json
import subprocess
import sys


from imsets.cli import run
from imsets.representation import grid_from_dict, grid_from_json, replay, standard_representation, trace_from_json, validate
from imsets.resources import data_path, read_data


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


CE = str(data_path("counterexample.json"))


def test_matrix_golden():
    code, out, _ = call("matrix", "--A", "2", "--B", "2", "--C", "1")
    assert code == 0
    assert out == read_data("table1.csv")


def test_count_csv():
    code, out, _ = call("count", "--max", "4", "4", "--format", "csv")
    assert code == 0
    golden = read_data("table2.csv").splitlines()
    want = golden[:1] + [l for l in golden[1:] if max(map(int, l.split(",")[:2])) <= 4]
    assert out.splitlines() == want


def test_count_single_json():
    code, out, _ = call("count", "--A", "3", "--B", "4", "--format", "json", "--threads", "2")
    assert code == 0
    assert json.loads(out)[0]["sigma_indec_representations"] == 96


def test_rifts_counterexample():
    code, out, _ = call("rifts", "--in", CE, "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert len(d["rifts"]) == 4 and {r["length"] for r in d["rifts"]} == {2}
    assert d["sigma_decomposable"] is False
    code, text, _ = call("rifts", "--in", CE)
    assert "σ-indecomposable" in text and "bs\nsb" in text


def test_normalize_counterexample():
    code, out, _ = call("normalize", "--in", CE)
    assert code == 0
    g = grid_from_json(read_data("counterexample.json"))
    assert replay(g, trace_from_json(out)) == standard_representation(g.triplet)
    code, text, _ = call("normalize", "--in", CE, "--format", "text")
    assert text.splitlines()[0].startswith("eliminate r_b(0,2;1)")


def test_decompose():
    code, out, _ = call("decompose", "--in", CE, "--format", "json")
    assert json.loads(out) == {"sigma_decomposable": False, "tree": None}


def test_fiber_roundtrip(tmp_path):
    f = tmp_path / "f.json"
    code, out, _ = call("fiber", "--A", "2", "--B", "3", "--out", str(f))
    assert code == 0 and out == ""
    grids = json.loads(f.read_text())
    assert len(grids) == 132
    assert all(validate(grid_from_dict(d)) for d in grids)
    code, out, _ = call("rifts", "--in", str(f), "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 133
    for d in grids[::11]:
        one = tmp_path / "one.json"
        one.write_text(json.dumps(d))
        assert call("rifts", "--in", str(one))[0] == 0
        assert call("normalize", "--in", str(one))[0] == 0


def test_fiber_text_and_graph():
    code, out, _ = call("fiber", "--A", "2", "--B", "2", "--format", "text")
    assert "12 labeled" in out and "3 up to relabeling" in out
    code, out, _ = call("graph", "--A", "2", "--B", "3", "--format", "json")
    assert json.loads(out)["components"] == 1


def test_imset_and_family():
    code, out, _ = call("imset", "--A", "2", "--B", "2", "--format", "json")
    d = json.loads(out)
    assert sorted(v for _, v in d["entries"]) == [-1, -1, 1, 1]
    code, out, _ = call("imset", "--A", "2", "--B", "1", "--elem", "a2", "b1", "a1", "--format", "json")
    assert json.loads(out)["entries"] == [[["a1"], 1], [["a1", "a2"], -1], [["a1", "b1"], -1], [["a1", "a2", "b1"], 1]]
    code, out, _ = call("family", "--A", "2", "--B", "2", "--format", "csv")
    assert len(out.splitlines()) == 17


def test_exit_codes(tmp_path):
    assert call("rifts")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("fiber", "--A", "0", "--B", "2")[0] == 1
    assert call("fiber", "--A", "3", "--B", "4", "--max-labeled", "10")[0] == 1
    assert call("count", "--A", "5", "--B", "5", "--max-patterns", "10")[0] == 1
    bad = tmp_path / "bad.json"
    d = json.loads(read_data("counterexample.json"))
    d["cells"][0][0], d["cells"][0][1] = d["cells"][0][1], d["cells"][0][0]
    bad.write_text(json.dumps(d))
    code, _, err = call("rifts", "--in", str(bad))
    assert code == 1 and "NotInFiberError" in err
    assert call("rifts", "--in", str(tmp_path / "missing.json"))[0] == 1
    assert call("imset", "--A", "1", "--B", "1", "--elem", "a1", "a1", "-")[0] == 1


def test_verify_command():
    code, out, _ = call("verify", "--pairs", "500", "--seed", "3", "--format", "json")
    assert code == 0
    assert [r["failures"] for r in json.loads(out)] == [0, 0, 0, 0]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "imsets", "count", "--max", "2", "3", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1:] == ["2,2,3,3,0,0", "2,3,9,11,0,0"]
