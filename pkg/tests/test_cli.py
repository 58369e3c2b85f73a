import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from rackdend import cli
from rackdend.products import ProductReport

FIX = Path(__file__).resolve().parents[1] / "fixtures"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cohomology_json(capsys):
    code, out, _ = run(capsys, "cohomology", "--structure", str(FIX / "rack_ConjS3.json"), "--degree", "1")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["betti"] == 3 and rep["torsion"] == []


def test_cohomology_group_and_cubical(capsys):
    code, out, _ = run(capsys, "cohomology", "--group", "fixture:Z2", "--degree", "2", "--coeff", "Z/2")
    assert code == 0 and json.loads(out)["results"][0]["group"] == "Z/2"
    code, out, _ = run(capsys, "cohomology", "--group", "fixture:Z2", "--complex", "cubical-group",
                       "--max-degree", "2")
    assert code == 0 and [r["betti"] for r in json.loads(out)["results"]] == [1, 2, 4]


def test_cohomology_text(capsys):
    code, out, _ = run(capsys, "cohomology", "--structure", "fixture:T2", "--max-degree", "2", "--format", "text")
    assert code == 0 and out.startswith("cohomology: PASS") and "H^2(T2; Z) = Z^4" in out


def test_products_check(capsys):
    code, out, _ = run(capsys, "products-check", "--structure", "fixture:R3", "--max-degree", "3",
                       "--trials", "3", "--coeff", "mat2/Z3")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["exhaustive_basis"]
    assert len(rep["reports"]) >= 4


def test_products_failure_exit_one(capsys, monkeypatch):
    def failing(*args, **kw):
        r = ProductReport("⋆ associativity")
        r.fail({"kind": "basis", "point": [0]})
        return r
    monkeypatch.setattr(cli, "check_star_associative", failing)
    code, out, _ = run(capsys, "products-check", "--structure", "fixture:R3", "--max-degree", "2")
    rep = json.loads(out)
    assert code == 1 and not rep["pass"]
    assert any(r["counterexample"] for r in rep["reports"])


def test_morphism_check(capsys):
    code, out, _ = run(capsys, "morphism-check", "--group", "fixture:S3", "--coeff", "Z/2", "--max-degree", "2")
    rep = json.loads(out)
    assert code == 0 and rep["chain_map"] and rep["algebra_morphism"]
    assert rep["injectivity"]["rank_S1"] == 1


def test_morphism_check_prime_required(capsys):
    code, _, err = run(capsys, "morphism-check", "--group", "fixture:Z2", "--coeff", "Z/4")
    assert code == 2 and "prime" in json.loads(err)["error"]


def test_nerve_check(capsys):
    code, out, _ = run(capsys, "nerve-check", "--structure", "fixture:R3", "--max-degree", "2", "--format", "text")
    assert code == 0 and "n=2: 9 trunk maps, expected 9" in out


def test_shuffle(capsys):
    code, out, _ = run(capsys, "shuffle", "--p1", "2", "--p2", "2")
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 6
    counts = []
    for cls in ("top-fixed", "left-max"):
        _, out, _ = run(capsys, "shuffle", "--p1", "2", "--p2", "2", "--class", cls)
        counts.append(json.loads(out)["count"])
    assert counts == [3, 3]


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "rep.json"
    code, out, _ = run(capsys, "shuffle", "--p1", "1", "--p2", "1", "--out", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text())["count"] == 2


@pytest.mark.parametrize("argv,needle", [
    (["cohomology", "--structure", str(FIX / "malformed_nonsquare.json")], "position"),
    (["cohomology", "--structure", str(FIX / "malformed_not_a_rack.json")], "axiom"),
    (["cohomology", "--structure", "fixture:R3", "--coeff", "Q"], "error"),
    (["cohomology", "--structure", "fixture:Z2"], "group"),
    (["cohomology", "--structure", "nope.json"], "no such file"),
    (["cohomology"], "exactly one"),
    (["shuffle", "--p1", "2"], "--p2"),
    (["products-check", "--structure", "fixture:R3", "--trials", "-1"], "nonnegative"),
])
def test_input_errors(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    rep = json.loads(err)
    assert rep["schema"] == 1 and needle in json.dumps(rep, ensure_ascii=False)


def test_nonsquare_position(capsys):
    _, _, err = run(capsys, "cohomology", "--structure", str(FIX / "malformed_nonsquare.json"))
    assert json.loads(err)["position"] is not None


def test_bad_flag_exit_two(capsys):
    assert cli.main(["cohomology", "--bogus"]) == 2
    capsys.readouterr()


def test_max_workers_env(monkeypatch):
    monkeypatch.setenv("RACKDEND_MAX_WORKERS", "3")
    assert cli.max_workers() == 3
    monkeypatch.setenv("RACKDEND_MAX_WORKERS", "x")
    with pytest.raises(cli.InputError):
        cli.max_workers()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "rackdend", "shuffle", "--p1", "1", "--p2", "2",
                          "--format", "text"], capture_output=True, text=True)
    assert out.returncode == 0 and "3 shuffles" in out.stdout
