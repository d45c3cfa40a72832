import json
import subprocess
import sys

import pytest

from adhmcert.adhm import StructureKind, dump_datum, generate_constrained
from adhmcert.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_PASS, main

DATA = __import__("pathlib").Path(__file__).resolve().parents[1] / "data"
DATUM = str(DATA / "charge1_rank2.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_symplectic_passes(capsys):
    code, out, _ = run(capsys, "verify", DATUM, "--kind", "symplectic")
    assert code == EXIT_PASS
    assert "global regularity" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", DATUM, "--json")
    doc = json.loads(out)
    assert code == EXIT_PASS and doc["verdict"] == "pass"
    assert doc["regularity"]["regular"] is True


def test_verify_orthogonal_fails_on_parity(capsys):
    code, out, _ = run(capsys, "verify", DATUM, "--kind", "orthogonal")
    assert code == EXIT_FAIL
    assert "first failing check: parity" in out


def test_verify_names_the_broken_relation(capsys, tmp_path):
    doc = json.loads((DATA / "charge1_rank2.json").read_text())
    doc["H"] = [["0", "1"], ["-1", "0"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(path), "--regularity", "off")
    assert code == EXIT_FAIL
    assert "first failing check: HJ + I^vee G" in out


def test_verify_nonzero_mu(capsys, tmp_path):
    doc = json.loads((DATA / "charge1_rank2.json").read_text())
    doc["J"] = [[["1"], ["0"]]]
    del doc["G"], doc["H"]
    path = tmp_path / "mu.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == EXIT_FAIL and "mu" in out


def test_verify_nonregular_generated_datum(capsys, tmp_path):
    ext = generate_constrained(StructureKind.SYMPLECTIC, 2, 2, 1, 0)
    ext = type(ext)(ext.datum.replace(I=(ext.datum.I[0] * 0,), J=(ext.datum.J[0] * 0,)), ext.G, ext.H)
    path = tmp_path / "zero.json"
    dump_datum(ext, path)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == EXIT_FAIL and "witness" in out


@pytest.mark.parametrize("text", ["{", '{"n": 2}', '{"n": 2, "r": 1, "c": 1, "A": 3, "B": [], "I": [], "J": []}'])
def test_verify_input_errors(capsys, tmp_path, text):
    path = tmp_path / "x.json"
    path.write_text(text)
    code, _, err = run(capsys, "verify", str(path))
    assert code == EXIT_INPUT and "input error" in err


def test_verify_missing_file(capsys):
    assert run(capsys, "verify", "/nonexistent.json")[0] == EXIT_INPUT


def test_certify_one_and_all(capsys):
    code, out, _ = run(capsys, "certify", "odd-charge")
    assert code == EXIT_PASS and "PASS" in out
    code, out, _ = run(capsys, "certify", "all", "--json", "--jobs", "2")
    doc = json.loads(out)
    verdicts = {c["id"]: c["verdict"] for c in doc["certificates"]}
    assert verdicts.pop("appendix-b") == "fail"
    assert set(verdicts.values()) == {"pass"}
    assert code == EXIT_FAIL


def test_certify_unknown_id(capsys):
    assert run(capsys, "certify", "nope")[0] == EXIT_INPUT


def test_certify_resource_cap(capsys):
    code, out, _ = run(capsys, "--max-basis", "1", "certify", "appendix-a")
    assert code == EXIT_CAP and "RESOURCE CAP" in out


def test_chern_and_dimension(capsys):
    code, out, _ = run(capsys, "chern", "--charge", "2", "--cap", "4")
    assert code == EXIT_PASS and out.strip() == "1 + 2t^2 + 3t^4"
    code, out, _ = run(capsys, "dimension", "--kind", "symplectic", "--space", "p3", "--rank", "2", "--charge", "3")
    assert code == EXIT_PASS and out.strip() == "21"
    assert run(capsys, "dimension", "--kind", "orthogonal", "--space", "p2", "--rank", "3", "--charge", "3")[0] == EXIT_INPUT
    assert run(capsys, "chern", "--charge", "0", "--cap", "4")[0] == EXIT_INPUT


def test_example(capsys):
    code, out, _ = run(capsys, "example", "charge1", "--n", "3")
    assert code == EXIT_PASS and "pass, rank 6 charge 1" in out


def test_search_reports_seed_and_no_witness(capsys):
    code, out, err = run(capsys, "search", "--shape", "p3-rank4-charge2", "--bound", "1", "--seed", "4", "--attempts", "10")
    assert "seed 4" in err
    assert code == EXIT_FAIL and "not a disproof" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "adhmcert", "chern", "--charge", "1", "--cap", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1 + t^2"
