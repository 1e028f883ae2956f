import json

import jsonschema
import pytest

from lowrank_mso.cli import run
from lowrank_mso.logic.library import CO_CONNECTIVITY

VLIST = {"type": "array", "items": {"type": "integer", "minimum": 0}}
SCHEMAS = {
    "check": {"type": "object", "required": ["result"], "properties": {"result": {"type": "boolean"}},
              "additionalProperties": False},
    "rank": {"type": "object", "required": ["rk_f2", "rk_q", "dv"],
             "properties": {k: {"type": "integer", "minimum": 0} for k in ("rk_f2", "rk_q", "dv")},
             "additionalProperties": False},
    "enum": {"type": "object", "required": ["r", "method", "count", "sets"],
             "properties": {"sets": {"type": "array"}, "count": {"type": "integer"}}},
    "digraph": {"type": "object", "required": ["n", "arcs"],
                "properties": {"arcs": {"type": "array", "items": {**VLIST, "minItems": 2, "maxItems": 2}}}},
    "seed": {"type": "object", "required": ["x_plus", "x_minus", "parts"],
             "properties": {"x_plus": VLIST, "x_minus": VLIST, "parts": {"type": "array", "items": VLIST}}},
    "separation": {"type": "object", "required": ["L", "R", "order"],
                   "properties": {"L": VLIST, "R": VLIST, "order": {"type": "integer"}}},
    "graph": {"type": "object", "required": ["n", "edges", "colors"]},
}


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, argv in {"c6": ["complement_of_cycle", "--n", "6"],
                       "c2": ["complement_of_two_cycles", "--n", "4"],
                       "p4": ["path", "--n", "4"],
                       "f1": ["figure1"],
                       "k33": ["biclique", "--s", "3"]}.items():
        paths[name] = str(tmp_path / f"{name}.json")
        assert run(["gen", *argv, "-o", paths[name]]) == 0
    paths["coconn"] = str(tmp_path / "coconn.lrm")
    (tmp_path / "coconn.lrm").write_text(CO_CONNECTIVITY)
    paths["flip"] = str(tmp_path / "flip.lrm")
    (tmp_path / "flip.lrm").write_text("flip Comp k=0 symmetric { () ~ (); }\n"
                                      "flip Dir k=1 { (adj=1) ~ (adj=0); }\n")
    capsys.readouterr()
    return paths


def test_check_exit_codes(files, capsys):
    code, out = call(capsys, "check", files["c6"], files["coconn"])
    jsonschema.validate(out, SCHEMAS["check"])
    assert code == 0 and out == {"result": True}
    code, out = call(capsys, "check", files["c2"], files["coconn"], "--strategy", "suffix")
    assert code == 1 and out == {"result": False}


def test_rank(files, capsys):
    code, out = call(capsys, "rank", files["p4"], "--set", "0,1")
    jsonschema.validate(out, SCHEMAS["rank"])
    assert code == 0 and out["rk_f2"] == 1 and out["rk_q"] == 1


def test_enum_lowrank_methods_agree(files, capsys):
    _, brute = call(capsys, "enum-lowrank", files["p4"], "--r", "1", "--method", "brute")
    _, suffix = call(capsys, "enum-lowrank", files["p4"], "--r", "1", "--method", "suffix")
    _, threaded = call(capsys, "enum-lowrank", files["p4"], "--r", "1", "--threads", "2")
    for out in (brute, suffix, threaded):
        jsonschema.validate(out, SCHEMAS["enum"])
    assert brute["sets"] == suffix["sets"] == threaded["sets"]
    _, prov = call(capsys, "enum-lowrank", files["f1"], "--r", "1", "--provenance")
    assert all({"set", "source"} <= set(item) for item in prov["sets"])


def test_flip(files, capsys):
    code, out = call(capsys, "flip", files["p4"], "--spec-file", files["flip"])
    jsonschema.validate(out, SCHEMAS["digraph"])
    assert code == 0 and len(out["arcs"]) == 6
    code, _ = call(capsys, "flip", files["p4"], "--spec-file", files["flip"], "--name", "Dir", "--params", "1",
                   "--symmetric")
    assert code == 3


def test_suffixes_and_seed(files, capsys):
    args = ["--a-plus", "a1p,a2p", "--a-minus", "a1m,a2m", "--r", "2"]
    code, out = call(capsys, "suffixes", files["f1"], *args)
    assert code == 0 and out["admissible"] and out["suffixes"] == [[], [2, 3, 7], [2, 3, 6, 7], list(range(8))]
    code, out = call(capsys, "seed", files["f1"], *args, "--b", "w3")
    jsonschema.validate(out["seed"], SCHEMAS["seed"])
    assert out["seed"] == {"x_plus": [2, 3, 7], "x_minus": [0, 1, 4, 5], "parts": [[6]]}
    code, out = call(capsys, "seed", files["f1"], *args, "--set", "a1p,a2p,w4")
    jsonschema.validate(out["seed"], SCHEMAS["seed"])
    assert code == 0
    code, _ = call(capsys, "seed", files["f1"], *args, "--set", "w2")
    assert code == 3


def test_capture_and_vc(files, capsys):
    code, out = call(capsys, "capture", files["p4"], "--set", "0,1", "--t", "2")
    jsonschema.validate(out, SCHEMAS["separation"])
    assert code == 0
    code, out = call(capsys, "capture", files["k33"], "--set", "0,1,2", "--t", "2")
    assert code == 1 and out["error"] == "NotASeparation"
    code, out = call(capsys, "vc", files["k33"])
    assert code == 0 and out == {"vc": 1}


def test_gen_needs_seed_for_random(capsys):
    assert run(["gen", "random", "--n", "5", "--p", "0.5"]) == 2
    code, out = call(capsys, "gen", "random", "--n", "5", "--p", "0.5", "--seed", "3")
    jsonschema.validate(out, SCHEMAS["graph"])
    assert code == 0


def test_error_exit_codes(files, tmp_path, capsys):
    assert run([]) == 2
    assert run(["rank"]) == 2
    assert run(["bogus"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "edges": [[0, 0]]}')
    assert run(["vc", str(bad)]) == 3
    assert run(["vc", str(tmp_path / "missing.json")]) == 3
    formula = tmp_path / "f.lrm"
    formula.write_text("forall x . flipconn<Nope>(x,x;)")
    assert run(["check", files["p4"], str(formula)]) == 3
    assert run(["enum-lowrank", files["p4"], "--r", "1", "--cap", "3"]) == 4
    assert run(["gen", "path", "--n", "20", "-o", str(tmp_path / "p20.json")]) == 0
    assert run(["vc", str(tmp_path / "p20.json")]) == 4


def test_env_cap(files, monkeypatch, capsys):
    monkeypatch.setenv("LRMSO_CAP", "3")
    assert run(["enum-lowrank", files["p4"], "--r", "1"]) == 4


def test_outputs_are_stable(files, capsys):
    first = call(capsys, "enum-lowrank", files["f1"], "--r", "1", "--provenance")
    second = call(capsys, "enum-lowrank", files["f1"], "--r", "1", "--provenance", "--threads", "3")
    assert first == second


def test_selftest_reports_figure1(capsys):
    code, out = call(capsys, "selftest")
    checks = {c["name"]: c["passed"] for c in out["checks"]}
    assert checks == {"admissible": True, "phi_plus": True, "phi_minus": True, "arc_w2_w3": True,
                      "suffixes": False}
    # the listed edges give two nontrivial suffixes, not the three drawn; see the decisions ledger
    assert code == 1
