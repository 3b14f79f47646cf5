import json
import os
import subprocess
import sys

import pytest

from contactlab.cli import main

MODELS = os.path.join(os.path.dirname(__file__), "..", "demos", "models")
D = os.path.join(MODELS, "d_contact.json")
PATH = os.path.join(MODELS, "path_abc.json")
OVERLAP = os.path.join(MODELS, "overlap3.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out), out


def test_check_d_contact_holds(capsys):
    code, doc, _ = run_json(capsys, "check", "--model", D, "--axioms", "C0-C4,GIA")
    assert code == 0 and doc["status"] == "pass"
    assert [r["name"] for r in doc["reports"]] == ["C0", "C1", "C2", "C3", "C4", "GIA"]
    assert list(doc) == ["tool", "version", "command", "input_digest", "reports", "status"]
    with open(D, "rb") as fh:
        import hashlib
        assert doc["input_digest"] == "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def test_check_c5_fails_with_witness(capsys):
    code, out, _ = run(capsys, "check", "--model", D, "--axioms", "C5")
    assert code == 1
    assert "FAIL  C5" in out and "witness:" in out and out.rstrip().endswith("status: fail")


def test_malformed_inputs_exit_2(capsys):
    code, _, err = run(capsys, "check", "--model", os.path.join(MODELS, "broken.json"))
    assert code == 2 and "line 3" in err
    code, _, err = run(capsys, "check", "--model", "/no/such/file.json")
    assert code == 2
    code, _, err = run(capsys, "check", "--model", D, "--axioms", "C9")
    assert code == 2
    code, _, err = run(capsys, "search", "x C")
    assert code == 2 and "column" in err
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--atoms", "two"])
    assert exc.value.code == 2


def test_greps_for_d_contact(capsys):
    code, doc, _ = run_json(capsys, "greps", "--model", D)
    assert code == 0
    text = json.dumps(doc)
    assert "class-filter-bijection" in text


def test_greps_lists_atoms_under_c5(capsys):
    code, out, _ = run(capsys, "greps", "--model", OVERLAP)
    assert code == 0 and "[{a}]" in out


def test_enumerate(capsys):
    code, doc, _ = run_json(capsys, "enumerate", "--universe", "8")
    assert code == 0 and doc["reports"][0]["details"]["count"] == 8
    assert len(doc["reports"][0]["details"]["models"]) == 8
    code, doc, _ = run_json(capsys, "enumerate", "--atoms", "3")
    assert code == 0 and doc["reports"][0]["details"]["count"] == 4
    code, _, _ = run(capsys, "enumerate", "--universe", "16")
    assert code == 2


def test_search(capsys):
    code, out, _ = run(capsys, "search", "C6 -> (x << y -> x < y | x = 0 | x = 1)")
    assert code == 0 and "theorem-confirmed" in out
    code, out, _ = run(capsys, "search", "C5", "--family", "d_contact")
    assert code == 1 and "countermodel-found" in out


def test_interval_nest_all(capsys):
    code, doc, _ = run_json(capsys, "interval", "nest", "--ambient", "R", "--nest", "harmonic:0:1", "--check", "all")
    assert code == 0
    by = {r["name"]: r for r in doc["reports"]}
    assert by["g-representative"]["certified"] and by["local-basis"]["certified"]


def test_interval_check_examples(capsys):
    code, out, _ = run(capsys, "interval", "check", "--ambient", "[0,1]+[2,3]", "--axioms", "C6")
    assert code == 1 and "FAIL  C6" in out and "[0,1]" in out
    code, out, _ = run(capsys, "interval", "check", "--ambient", "[0,1]+{2}")
    assert code == 1 and "FAIL  atomless" in out and "{2}" in out
    code, _, _ = run(capsys, "interval", "check", "--ambient", "R")
    assert code == 0


def test_interval_model_file(capsys):
    code, out, _ = run(capsys, "interval", "nest", "--model", os.path.join(MODELS, "two_pieces.json"),
                       "--nest", "multi_harmonic:1,2:1", "--check", "grep")
    assert code == 1 and "fails (certified)" in out


def test_verify_paper_groups(capsys):
    code, doc, _ = run_json(capsys, "verify-paper", "--only", "facts")
    assert code == 0 and [r["name"] for r in doc["reports"]] == [f"fact{i}" for i in range(1, 7)]
    code, doc, _ = run_json(capsys, "verify-paper", "--only", "interval")
    assert code == 0 and len(doc["reports"]) == 7
    code, _, _ = run(capsys, "verify-paper", "--only", "bogus")
    assert code == 2


def test_verify_paper_full_run_flags_exactly_the_refuted_claims(capsys):
    code, doc, raw = run_json(capsys, "verify-paper")
    assert code == 1 and doc["status"] == "fail"
    red = [r["name"] for r in doc["reports"] if r["status"] != r["expected"]]
    assert red == ["C6<->ll-product-strict (BCA)", "GIA<->meet-form", "d-contact unique G-point"]
    # byte-stable across runs
    _, _, again = run_json(capsys, "verify-paper")
    assert raw == again


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "contactlab", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("contactlab ")
