import json
import os
from pathlib import Path

import pytest

from parahopf.cli import main

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("PARAHOPF_REGEN_GOLDEN") == "1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, code", [
    (["verify", "pair_groupoid"], 0),
    (["verify", "z3_broken_antipode"], 1),
    (["cocyclic", "z3_broken_antipode", "--max-level", "2"], 1),
    (["verify", "double_crossed_flip"], 1),
    (["cohomology", "z3_groupoid", "--max-level", "3"], 0),
    (["haar", "z3_groupoid", "--max-level", "2"], 0),
    (["verify", "no_such_instance"], 2),
    (["cohomology", "quantum_torus"], 2),
    (["export", "quantum_torus", "--out", "unused"], 2),
    (["cocyclic", "pair_groupoid", "--max-level", "5"], 2),
    (["verify", "pair_groupoid", "--engine", "normal-form"], 2),
    (["verify", "pair_groupoid", "--field", "reals"], 2),
    (["verify", "quantum_torus", "--field", "rational"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_bad_spec_files(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and "invalid JSON" in err
    p.write_text(json.dumps({"schema": 1, "name": "x", "kind": "groupoid",
                             "groupoid": {"preset": "pair", "objects": ["a"]}, "colour": 1}), encoding="utf-8")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and "colour" in err
    p.write_text(json.dumps({"schema": 1, "name": "x", "kind": "raw", "raw": {
        "H": {"basis": ["1"], "unit": {"1": 1}, "mult": [["1", "1", {"1": 1}]]},
        "R": {"basis": ["1"], "unit": {"1": 1}, "mult": [["1", "1", {"1": 1}]]},
        "alpha": {"1": {"1": 1}}, "beta": {"1": {"1": 1}}, "coproduct": {"1": [["1", "1", "x"]]},
        "counit": {"1": {"1": 1}}, "antipode": {"1": {"1": 1}}}}), encoding="utf-8")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and "non-scalar" in err


def test_failure_witness_in_table(capsys):
    code, out, _ = run(capsys, "verify", "z3_broken_antipode")
    assert code == 1
    line = next(l for l in out.splitlines() if l.strip().startswith("PH2"))
    assert "h=g1" in line
    assert out.rstrip().endswith("verdict: FAIL")


def test_table_truncates_witnesses(capsys):
    _, out, _ = run(capsys, "verify", "double_crossed_flip")
    line = next(l for l in out.splitlines() if "well-defined[flip]" in l)
    assert len(line.split("fail", 1)[1].strip()) <= 150


@pytest.mark.parametrize("golden, argv", [
    ("verify_pair_groupoid.json", ["verify", "pair_groupoid"]),
    ("cocyclic_z3_broken.json", ["cocyclic", "z3_broken_antipode", "--max-level", "2"]),
    ("cohomology_pair_groupoid.json", ["cohomology", "pair_groupoid", "--max-level", "4"]),
    ("haar_quantum_torus.json", ["haar", "quantum_torus", "--max-level", "2", "--window", "2"]),
])
def test_json_golden(tmp_path, capsys, golden, argv):
    out = tmp_path / "r.json"
    run(capsys, *argv, "--json", str(out))
    text = out.read_text(encoding="utf-8")
    if REGEN:
        (GOLDEN / golden).write_text(text, encoding="utf-8")
    assert text == (GOLDEN / golden).read_text(encoding="utf-8")
    data = json.loads(text)
    assert data["schema_version"] == 1
    assert data["command"] == argv[0]


def test_cohomology_json_contents(tmp_path, capsys):
    out = tmp_path / "r.json"
    run(capsys, "cohomology", "pair_groupoid", "--json", str(out))
    coh = json.loads(out.read_text(encoding="utf-8"))["cohomology"]
    assert coh["hc"] == {"0": 2, "1": 0, "2": 2, "3": 0, "4": 2}
    assert coh["level_dims"] == {"0": 2, "1": 4, "2": 8, "3": 16, "4": 32}


def test_reports_are_deterministic(tmp_path, capsys):
    texts = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        code, table, _ = run(capsys, "cocyclic", "double_crossed", "--max-level", "3", "--json", str(out))
        texts.append((table, out.read_bytes()))
    assert texts[0] == texts[1]


def test_export(tmp_path, capsys):
    code, out, _ = run(capsys, "export", "pair_groupoid", "--max-level", "2", "--out", str(tmp_path))
    assert code == 0
    basis = (tmp_path / "basis_2.txt").read_text(encoding="utf-8").splitlines()
    assert basis[0].endswith("dim 8") and len(basis) == 9
    lines = (tmp_path / "tau_2.txt").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# parahopf sparse triplet v1"
    assert "# certified yes" in lines
    trip = [tuple(l.split()) for l in lines if not l.startswith("#")]
    assert len(trip) == 8
    assert sorted(int(j) for _, j, _ in trip) == list(range(8))
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "delta_1_2.txt" in names and "sigma_2_1.txt" in names and "delta_2_0.txt" not in names


def test_export_basis_only(tmp_path, capsys):
    code, _, _ = run(capsys, "export", "z3_groupoid", "--what", "basis", "--max-level", "1", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["basis_0.txt", "basis_1.txt"]


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "pair_groupoid" in out and "quantum_torus_n3" in out
