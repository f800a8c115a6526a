import io
import json
from importlib import resources

import jsonschema
import pytest

from jetlct.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def schema(name):
    return json.loads(resources.files("jetlct").joinpath("schemas", name).read_text())


def test_lct_json():
    code, out = call("lct", "--ideal", "x^2; y^3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["lct"] == "5/6" and payload["vertex"] == ["1/2", "1/3"]
    assert payload["tight_generators"] == ["x^2", "y^3"]
    jsonschema.validate(payload, schema("lct.json"))


def test_lct_text_agrees_with_json():
    _, text = call("lct", "--ideal", "x^2; y^3")
    assert "lct = 5/6" in text and "vertex = (1/2, 1/3)" in text


def test_lct_via_jets():
    code, out = call("lct", "--ideal", "x^2; y^3", "--via-jets", "--json", "--m-max", "30")
    payload = json.loads(out)
    assert code == 0 and payload["via_jets"]["certificate_level"] == 5
    jsonschema.validate(payload, schema("lct.json"))
    code, out = call("lct", "--ideal", "x^2; y^3", "--via-jets", "--json", "--m-max", "3")
    assert code == 0 and json.loads(out)["via_jets"]["skipped"]


def test_lct_unit_ideal():
    code, out = call("lct", "--ideal", "x; 1", "--json")
    assert code == 0 and json.loads(out)["lct"] == "inf"


def test_lct_from_file(tmp_path):
    f = tmp_path / "ideal.txt"
    f.write_text("# the ideal (x^2, y^3)\nx^2\ny^3\n", encoding="utf-8")
    code, out = call("lct", str(f), "--json")
    assert code == 0 and json.loads(out)["lct"] == "5/6"


def test_jet_ideal_text_and_json():
    code, out = call("jet-ideal", "--ideal", "u^2 - v^3", "--level", "1")
    assert code == 0
    assert out.splitlines() == ["u^2 - v^3", "2*u*u' - 3*v^2*v'"]
    code, out = call("jet-ideal", "--ideal", "u^2 - v^3", "--level", "1", "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, schema("jet_ideal.json"))
    assert payload["generators"] == ["u^2 - v^3", "2*u*u' - 3*v^2*v'"]


def test_jet_dim():
    code, out = call("jet-dim", "--ideal", "x^2; y^3", "--level", "5", "--json")
    payload = json.loads(out)
    assert code == 0 and payload == {"m": 5, "dim": 7, "argmin": [3, 2], "normalized": "7/6",
                                     "fiber_origin": False}
    jsonschema.validate(payload, schema("jet_dim.json"))
    code, out = call("jet-dim", "--ideal", "x^2; y^3", "--sweep", "6", "--fiber-origin", "--json")
    payload = json.loads(out)
    assert len(payload["levels"]) == 7
    jsonschema.validate(payload, schema("jet_dim.json"))
    _, text = call("jet-dim", "--ideal", "x^2; y^3", "--level", "5")
    assert text.strip() == "m=5 dim=7 argmin=(3, 2) normalized=7/6"


def test_estimate():
    code, out = call("estimate", "--ideal", "u^2 - v^3", "--prime", "5", "--prime", "7",
                     "--levels", "8", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["est_lct"] == "5/6"
    assert payload["prime"] == [5, 7] and payload["levels"][0]["count"] == [5, 7]
    jsonschema.validate(payload, schema("estimate.json"))
    _, text = call("estimate", "--ideal", "u^2 - v^3", "--prime", "5", "--prime", "7", "--levels", "8")
    assert text.splitlines()[-1].startswith("est_lct = 5/6")
    for r in payload["primes"]:
        for lv in r["levels"]:
            assert f"p={r['prime']} m={lv['m']} count={lv['count']} est_dim={lv['est_dim']}" in text


def test_check_small():
    code, out = call("--threads", "1", "check", "--property", "bounds", "--seed", "1", "--trials", "5", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["violation_count"] == 0
    jsonschema.validate(payload, schema("check.json"))


@pytest.mark.parametrize("argv, code", [
    (["lct", "--ideal", "u^2 - v^3"], 3),
    (["jet-dim", "--ideal", "u^2 - v^3"], 3),
    (["lct", "--ideal", "x - x"], 2),
    (["lct", "--ideal", "x^"], 2),
    (["lct"], 1),
    (["frobnicate"], 1),
    (["estimate", "--ideal", "x", "--prime", "6"], 1),
    (["estimate", "--ideal", "u^2 - v^3", "--prime", "7", "--levels", "8", "--budget", "10"], 4),
    (["lct", "--ideal", "x^2", "--vars", "y"], 2),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_identical_argv_identical_output():
    argv = ["estimate", "--ideal", "x*y - y^2", "--levels", "3", "--json"]
    assert call(*argv) == call(*argv)
