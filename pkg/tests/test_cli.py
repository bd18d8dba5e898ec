import json
import subprocess
import sys

import pytest

from residuum.cli import main, run
from residuum.constructions import Signature, restrict
from residuum.residuation import ResAlgebra
from residuum.textio import parse, serialize

Z3_MAGMA = "magma 3\n" + "".join(f"op {a} {b} {(a + b) % 3}\n" for a in range(3) for b in range(3)) + "unit 0\n"


@pytest.fixture
def files(tmp_path, z3, bool2):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    lres = z3.lres.copy()
    lres[1, 1] = 0
    return {
        "z3": put("z3.txt", serialize(z3)),
        "bool2": put("b2.txt", serialize(bool2)),
        "square": put("sq.txt", serialize(restrict(z3, (0, 1, 6, 7), Signature.RESIDUATION).algebra)),
        "bad": put("bad.txt", serialize(ResAlgebra(z3.lat, lres, z3.rres))),
        "magma": put("m.txt", Z3_MAGMA),
        "broken": put("broken.txt", "magma 3\nop 0 5 1\n"),
        "vee": put("v.txt", "poset 3\nle 0 1\nle 0 2\n"),
        "sweep": put("s.json", json.dumps({"seed": 1, "families": {"heyting-chain": {}, "pair-groupoid": {}}})),
    }


def out_json(argv):
    text, code = run([*argv, "--json"])
    return json.loads(text), code


def test_demo(capsys):
    assert main(["demo-z3"]) == 0
    out = capsys.readouterr().out
    assert "complex algebra of Z3 (8 elements)" in out
    assert "product {1,2}.{1,2}: {0,1,2}" in out
    assert "closure of {{1,2}} (residuation): {{}, {0}, {1,2}, {0,1,2}}" in out
    assert "closure of {{1,2}} (rl): {{}, {0}, {1,2}, {0,1,2}}" in out
    assert "functional_witness: {1,2} . {1,2} = {0,1,2}" in out


def test_demo_json():
    payload, code = out_json(["demo-z3"])
    assert code == 0 and payload["ok"]
    assert payload["functional"] and payload["total"]
    assert payload["subalgebra dual"]["functional"] is False


def test_module_entry():
    r = subprocess.run([sys.executable, "-m", "residuum", "demo-z3", "--json"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["ok"]


def test_verify(files):
    assert out_json(["verify", files["bool2"]]) == ({"command": "verify", "size": 2, "distributive": True,
                                                    "verify_axioms": {"ok": True}}, 0)
    payload, code = out_json(["verify", files["bad"]])
    assert code == 1 and payload["verify_axioms"]["witness"] == ["{0}", "{0}", "{0}"]


def test_functionality(files):
    payload, code = out_json(["functionality", files["square"]])
    assert code == 1
    assert payload["functional"] is False
    assert payload["functional_witness"] == "{1,2} . {1,2} = {0,1,2}"
    assert out_json(["functionality", files["z3"]])[1] == 0


def test_prop316(files):
    payload, code = out_json(["prop316", files["square"]])
    assert code == 0 and payload["agree"]
    assert (payload["functional"], payload["condition_2"], payload["condition_3"]) == (False, False, False)
    assert payload["condition_3_witness (x,o1,o2)"] == ["{1,2}", "{0}", "{1,2}"]


def test_inequality(files):
    payload, code = out_json(["inequality", files["z3"]])
    assert code == 1
    assert payload["converse_inequality"]["ok"]
    assert payload["left_inequality"]["witness"] == ["{0,1}", "{0}", "{1}"]


def test_dual(files):
    text, code = run(["dual", files["z3"]])
    assert code == 0 and text.startswith("dual 3\n")
    d = parse(text)
    assert len(d.rel) == 9
    payload, _ = out_json(["dual", files["z3"]])
    assert [p["label"] for p in payload["points"]] == ["{0}", "{1}", "{2}"]


def test_complex_and_heyting(files):
    text, code = run(["complex", files["magma"]])
    assert code == 0
    alg = parse(text)
    assert alg.size == 8 and alg.unit == 1
    assert "prod 6 6 7" in text.splitlines()
    text, code = run(["heyting", files["vee"]])
    assert code == 0 and parse(text).size == 5


def test_subalgebras_and_falsify(files):
    payload, _ = out_json(["subalgebras", files["z3"]])
    assert payload["count"] == 6
    assert {"universe": "{{}, {0}, {1,2}, {0,1,2}}", "size": 4, "functional": False} in payload["subalgebras"]
    payload, _ = out_json(["subalgebras", files["z3"], "--sig", "rl"])
    assert payload["count"] == 5
    for sig in ("residuation", "rl"):
        payload, code = out_json(["falsify", files["z3"], "--sig", sig])
        assert code == 0 and payload["subuniverse"] == "{{}, {0}, {1,2}, {0,1,2}}"
    payload, code = out_json(["falsify", files["bool2"]])
    assert code == 1 and payload["witness"] is None


def test_sweep(files):
    payload, code = out_json(["sweep", files["sweep"]])
    assert code == 0 and payload["items"] == 9 and payload["failures"] == []
    assert len(payload["records"]) > 0


def test_errors(files, capsys):
    assert main(["complex", files["broken"]]) == 2
    err = capsys.readouterr().err
    assert "broken.txt:2:" in err
    assert main(["subalgebras", files["z3"], "--max-enum", "4"]) == 2
    assert "--max-enum" in capsys.readouterr().err
    assert main(["verify", files["z3"] + ".missing"]) == 2
    assert main(["falsify", files["z3"], "--sig", "nope"]) == 2


def test_caps_are_scoped(files):
    from residuum.report import limits
    before = limits()
    run(["verify", files["z3"], "--max-carrier", "1000"])
    assert limits() == before
