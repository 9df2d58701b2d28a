import io
import json
import re
import subprocess
import sys

import pytest

from graded_workbench import cli
from graded_workbench.documents import InputError, parse_document


def run(argv):
    buf = io.StringIO()
    code = cli.run(argv, stdout=buf)
    return code, json.loads(buf.getvalue())


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


WEAK = {  # Q in degree 0 of Z2, nothing in degree 1
    "group": {"kind": "cyclic", "n": 2},
    "components": {"0": ["1"], "1": []},
    "structure": [{"g": 0, "h": 0, "i": 0, "j": 0, "coeffs": ["1"]}],
    "unity": ["1"],
}


def test_gallery_listing():
    code, out = run(["gallery"])
    assert code == 0 and out["schema"] == "1"
    assert set(out["entries"]) == {"m3-z2", "gauss-z2", "laurent-group-ring", "swap-skew", "weyl", "finite-orbit"}


def test_gallery_m3():
    code, out = run(["gallery", "m3-z2"])
    obs = out["report"]["gallery"]["observed"]
    assert code == 0 and out["failed_checks"] == []
    assert obs["strongly_graded"] and not obs["crossed_product"] and obs["center_of_neutral_g_simple"]


def test_gallery_gauss():
    code, out = run(["gallery", "gauss-z2"])
    simp = out["report"]["simplicity"]
    assert code == 0
    assert simp["simple"] and not simp["max_commutative"] and simp["g_simple"]


def test_laurent_family_flag():
    code, out = run(["gallery", "laurent-group-ring", "--n", "5"])
    assert code == 0
    assert out["report"]["gallery"]["augmentation_ideal"]["dim"] == 4


def test_dynsys_single_orbit(tmp_path):
    path = write(tmp_path, "single-orbit-4.json", {"x_size": 4, "h": [1, 2, 3, 0]})
    code, out = run(["dynsys", "--input", path, "--verify-pi", "100"])
    rep = out["report"]
    assert code == 0
    assert rep["minimal"] and not rep["top_free"] and not rep["simplicity"]["simple"]
    assert rep["pi"]["pass"] and rep["pi"]["samples"] == 100


def test_weyl_command():
    code, out = run(["weyl", "--bound", "2", "--samples", "10"])
    assert code == 0
    assert out["report"]["alpha"]["1,-1"] == ["0/1", "1/1"]


def test_rationals_are_strings():
    _, out = run(["gallery", "gauss-z2"])
    text = json.dumps(out)
    assert re.search(r'"-?\d+/\d+"', text)


def test_math_failure_exits_1(tmp_path):
    path = write(tmp_path, "weak.json", WEAK)
    code, out = run(["strong", "--input", path])
    assert code == 1 and "strong.strongly_graded" in out["failed_checks"]
    code, out = run(["validate", "--input", path])
    assert code == 0
    # theorem-backed sections are skipped, and the skip is reported as a failed precondition
    code, out = run(["action", "--input", path])
    assert code == 1 and out["report"]["action"]["skipped"]


def test_simplicity_on_document(tmp_path):
    doc = {"kind": "skew", "seed": 5, "samples": 10,
           "payload": {"group": {"kind": "cyclic", "n": 2}, "coefficients": {"ring": "functions", "points": [0, 1, 2]},
                       "action": [[0, 1, 2], [1, 0, 2]]}}
    code, out = run(["simplicity", "--input", write(tmp_path, "s.json", doc)])
    assert code == 0
    assert out["report"]["simplicity"]["simple"] is False
    assert out["instance"]["seed"] == 5


def test_malformed_json(tmp_path):
    code, out = run(["strong", "--input", write(tmp_path, "bad.json", "{oops")])
    assert code == 2 and out["status"] == "input-error" and "line 1" in out["error"]


def test_schema_error_has_pointer(tmp_path):
    bad = dict(WEAK, unity=["x"])
    code, out = run(["validate", "--input", write(tmp_path, "bad.json", {"kind": "graded", "payload": bad})])
    assert code == 2 and out["path"] == "/payload/unity/0"
    code, out = run(["dynsys", "--input", write(tmp_path, "d.json", {"x_size": 3, "h": [0, 0, 1]})])
    assert code == 2 and out["path"] == "/h"


def test_usage_errors(tmp_path):
    assert run(["gallery", "nope"])[0] == 2
    assert run(["strong"])[0] == 2
    assert cli.run(["frobnicate"], stdout=io.StringIO()) == 2
    path = write(tmp_path, "w.json", WEAK)
    assert run(["simplicity", "--input", path])[0] == 2


def test_parse_document_infers_kind():
    assert parse_document({"x_size": 2, "h": [1, 0]}).kind == "dynsys"
    assert parse_document({"instance": "weyl"}).kind == "crystalline"
    with pytest.raises(InputError):
        parse_document({"kind": "graded", "payload": {}})


def test_json_indent():
    buf = io.StringIO()
    cli.run(["gallery", "--json-indent", "2"], stdout=buf)
    assert buf.getvalue().startswith("{\n  ")


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "graded_workbench.cli", "gallery", "swap-skew"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
