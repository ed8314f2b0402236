import json

import pytest

from contactsurgery.cli import entry
from contactsurgery.homology import format_matrix


def run(capsys, *argv):
    code = entry(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_translate_text(capsys):
    code, out, err = run(capsys, "translate", "--knot", "torus:3,2", "--slope", "2")
    assert code == 0 and err == ""
    assert "member 0: sign +1 tb 1 rot 0 budget 0" in out
    assert "member 1: sign -1 tb 0 rot 0 budget 1" in out
    assert "structures: 2" in out
    assert "h1: Z/3" in out


def test_translate_json_deterministic(capsys):
    code, out1, _ = run(capsys, "translate", "--knot", "torus:3,2", "--slope", "2", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "translate", "--knot", "torus:3,2", "--slope", "2", "--json")
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["schema_version"] == 1
    assert payload["contact_slope"] == "2"
    assert len(payload["members"]) == 2
    assert payload["linking_matrix"] == [[2, 1], [1, -1]]
    assert payload["h1"]["total_order"] == 3


def test_tight_verdicts(capsys):
    code, out, _ = run(capsys, "tight", "--knot", "torus:3,2", "--slope", "2")
    assert code == 0
    assert "verdict: TightNonzeroInvariant" in out
    code, out, _ = run(capsys, "tight", "--knot", "torus:3,2", "--slope", "1")
    assert code == 0
    assert "verdict: Excluded" in out and "no claim" in out
    code, out, _ = run(capsys, "tight", "--knot", "torus:3,2", "--slope", "-1", "--json")
    payload = json.loads(out)
    assert payload["verdict"] == "SteinFillable"
    assert payload["contact_slope"] == "-2"


def test_fillable_certify_json(capsys):
    code, out, _ = run(capsys, "fillable", "--n", "1", "--slope", "2", "--certify", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "NoFillable"
    assert payload["interval"] == ["1", "4"]
    assert payload["certificate_required"] is True
    assert payload["certificate"]["a1"] == 2
    assert payload["certificate"]["embedding"] == {"bound": 12, "exists": False}
    assert payload["certificate_verified"] is True


def test_fillable_text_recipes(capsys):
    code, out, _ = run(capsys, "fillable", "--n", "1", "--slope", "1/2")
    assert code == 0
    assert "verdict: SteinFillable" in out and "Legendrian recipe" in out
    code, out, _ = run(capsys, "fillable", "--n", "1", "--slope", "4")
    assert "single curve with contact coefficient -2" in out
    code, out, _ = run(capsys, "fillable", "--n", "1", "--slope", "5")
    assert "contact coefficients -2 and -1" in out
    code, out, _ = run(capsys, "fillable", "--n", "1", "--slope", "2", "--certify")
    assert "certificate: verified" in out
    assert "embedding: none up to rank 12" in out
    code, out, _ = run(capsys, "fillable", "--n", "1", "--slope", "4", "--certify")
    assert "certificate: not required" in out


def test_witness_output(capsys):
    code, out, _ = run(capsys, "witness", "--m", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["primes"] == [3, 5]
    assert payload["group_order"] == 15
    assert [e["order"] for e in payload["entries"]] == [3, 5]
    code, out, _ = run(capsys, "witness", "--m", "2")
    assert "primes: 3 5" in out and "group: Z/15" in out


def test_plumbing_output(capsys):
    code, out, _ = run(capsys, "plumbing", "--n", "1", "--slope", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["determinant"] == 2
    assert payload["definiteness"] == "positive-definite"
    assert len(payload["vertices"]) == 7
    code, out, _ = run(capsys, "plumbing", "--n", "1", "--slope", "2")
    assert "k 2" in out.splitlines()
    assert "determinant: 2" in out


def test_lattice_embed_obstruction(capsys):
    code, out, _ = run(capsys, "lattice-embed", "--gram", "lambda:2,1")
    assert code == 0
    assert out.strip() == "no embedding (bound m=12)"


def test_lattice_embed_from_file(capsys, tmp_path):
    path = tmp_path / "gram.txt"
    path.write_text(format_matrix([[-2, 1], [1, -2]]))
    code, out, _ = run(capsys, "lattice-embed", "--gram", str(path), "--bound", "3")
    assert code == 0
    assert out.startswith("embedding into rank 3:")
    assert len(out.strip().splitlines()) == 3
    code, out, _ = run(capsys, "lattice-embed", "--gram", str(path), "--bound", "3", "--json")
    payload = json.loads(out)
    assert payload["found"] is True and len(payload["vectors"]) == 2


def test_homology_modes(capsys, tmp_path):
    code, out, _ = run(capsys, "homology", "--slope", "7/5")
    assert code == 0
    assert "h1: Z/7" in out and "order: 7" in out
    code, out, _ = run(capsys, "homology", "--slope", "0")
    assert "order: infinite" in out
    path = tmp_path / "m.txt"
    path.write_text(format_matrix([[2, 1], [1, -1]]))
    code, out, _ = run(capsys, "homology", "--matrix", str(path), "--json")
    payload = json.loads(out)
    assert payload["orders"] == [3] and payload["total_order"] == 3
    with pytest.raises(SystemExit) as exc:
        entry(["homology"])
    assert exc.value.code == 2


def test_lspace_chains(capsys):
    code, out, _ = run(capsys, "lspace", "--knot", "torus:3,2", "--query", "3/2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "seed 5" and lines[-1] == "step_up 3/2"
    assert len(lines) == 7
    code, out, _ = run(capsys, "lspace", "--knot", "torus:3,2", "--query", "1/2")
    assert code == 0
    assert "not derivable: 1/2 (floor 2g-1 = 1)" in out
    code, out, _ = run(capsys, "lspace", "--knot", "torus:3,2", "--query", "4", "--json")
    payload = json.loads(out)
    assert payload["derivable"] is True
    assert payload["steps"][0] == {"kind": "seed", "slope": "5"}


def test_lspace_seed_override(capsys):
    # twist knots carry no tabulated slope; a seed makes them usable
    code, _, err = run(capsys, "lspace", "--knot", "twist:-2", "--query", "2")
    assert code == 1 and err.startswith("error:")
    code, out, _ = run(capsys, "lspace", "--knot", "twist:-2", "--query", "2", "--seed", "3")
    assert code == 0
    assert out.strip().splitlines() == ["seed 3", "step_down 2"]


def test_domain_errors_exit_one(capsys):
    code, _, err = run(capsys, "translate", "--knot", "bogus", "--slope", "2")
    assert code == 1 and err.startswith("error:")
    code, _, err = run(capsys, "plumbing", "--n", "1", "--slope", "4")
    assert code == 1 and "4n" in err
    code, _, err = run(capsys, "witness", "--m", "0")
    assert code == 1
    code, _, err = run(capsys, "lattice-embed", "--gram", "lambda:9")
    assert code == 1
    code, _, err = run(capsys, "lattice-embed", "--gram", "/nonexistent/file")
    assert code == 1


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        entry(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        entry([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        entry(["witness"])  # --m is required
    assert exc.value.code == 2
