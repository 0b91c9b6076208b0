import json
import re
from pathlib import Path

import pytest

from foliation_barcode.barcode import Barcode
from foliation_barcode.cli import main

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def usage_exit(capsys, *argv):
    with pytest.raises(SystemExit) as info:
        main([str(a) for a in argv])
    capsys.readouterr()
    return info.value.code


def test_compute_section4(capsys):
    code, out, _ = run(capsys, "compute", INSTANCES / "section4.json")
    assert code == 0
    assert json.loads(out) == {"bars": [{"birth": 0.0, "death": None},
                                        {"birth": 1.0, "death": 2.0},
                                        {"birth": 3.0, "death": None}]}


def test_compute_explain(capsys):
    code, out, _ = run(capsys, "compute", INSTANCES / "section4.json", "--explain")
    assert code == 0
    report = json.loads(out)
    assert report["name"] == "section4"
    assert [r["t"] for r in report["thresholds"]] == [0.0, 1.0, 2.0, 3.0]


def test_compute_gen_sphere_matches_compute(capsys):
    path = INSTANCES / "morse-sphere.json"
    _, a, _ = run(capsys, "compute", path)
    code, b, _ = run(capsys, "compute-gen", path)
    assert code == 0 and a == b


@pytest.mark.parametrize("name", ["section4", "north-south"])
def test_compute_gen_rejects_non_generic(capsys, name):
    code, out, err = run(capsys, "compute-gen", INSTANCES / f"{name}.json")
    assert code == 1 and out == "" and "not a generic instance" in err


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [\n  {"id": "a",, }]}')
    code, _, err = run(capsys, "compute", bad)
    assert code == 2
    assert "line 2 column" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "compute", tmp_path / "absent.json")
    assert code == 2 and "cannot read" in err


def test_schema_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [{"id": "a", "action": "high", "index": 1}], "edges": []}')
    assert run(capsys, "compute", bad)[0] == 2


def test_invalid_instance_exit_one(capsys, tmp_path):
    up = tmp_path / "up.json"
    up.write_text(json.dumps({"vertices": [{"id": "a", "action": 0, "index": 1},
                                           {"id": "b", "action": 1, "index": 1}],
                              "edges": [["a", "b"]]}))
    code, _, err = run(capsys, "compute", up)
    assert code == 1 and "a->b" in err
    code, out, _ = run(capsys, "validate", up)
    assert code == 1 and json.loads(out)["valid"] is False


def test_validate_profiles(capsys):
    assert run(capsys, "validate", INSTANCES / "section4.json")[0] == 0
    assert run(capsys, "validate", INSTANCES / "section4.json", "--strict")[0] == 0
    assert run(capsys, "validate", INSTANCES / "section4.json", "--generic")[0] == 1
    assert run(capsys, "validate", INSTANCES / "morse-sphere.json", "--generic")[0] == 0


def test_compare(capsys, tmp_path):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    a.write_text(Barcode([(0, 4)]).to_json())
    b.write_text(Barcode().to_json())
    c.write_text(Barcode([(0, float("inf"))]).to_json())
    assert run(capsys, "compare", a, b)[1].strip() == "2.0"
    assert run(capsys, "compare", a, a)[1].strip() == "0.0"
    assert run(capsys, "compare", a, c)[1].strip() == "inf"


def test_generate_round_trip(capsys, tmp_path):
    out = tmp_path / "g0.json"
    assert run(capsys, "generate", "--genus", 0, "--seed", 42, "--out", out)[0] == 0
    provenance = json.loads((tmp_path / "g0.provenance.json").read_text())
    assert provenance["seed"] == 42 and provenance["genus"] == 0
    _, a, _ = run(capsys, "compute", out)
    code, b, _ = run(capsys, "compute-gen", out)
    assert code == 0 and a == b


def test_generate_genus_one(capsys, tmp_path):
    out = tmp_path / "g1.json"
    assert run(capsys, "generate", "--genus", 1, "--seed", 7, "--out", out)[0] == 0
    _, text, _ = run(capsys, "compute-gen", out)
    bars = json.loads(text)["bars"]
    assert sum(b["death"] is None for b in bars) == 4


def test_generate_is_byte_stable(capsys):
    _, first, _ = run(capsys, "generate", "--genus", 2, "--seed", 5)
    _, second, _ = run(capsys, "generate", "--genus", 2, "--seed", 5)
    assert first == second and first.startswith("{")


def test_generate_seed_from_environment(capsys, monkeypatch):
    _, explicit, _ = run(capsys, "generate", "--seed", 9)
    monkeypatch.setenv("BARCODE_SEED", "9")
    _, implied, _ = run(capsys, "generate")
    assert explicit == implied


def test_generate_usage_errors(capsys):
    assert usage_exit(capsys, "generate", "--genus", -1) == 2
    assert usage_exit(capsys, "generate", "--genus", "one") == 2
    assert usage_exit(capsys, "generate", "--sources", 0) == 2
    assert usage_exit(capsys) == 2


def test_generate_no_attempts(capsys):
    code, _, err = run(capsys, "generate", "--max-attempts", 0)
    assert code == 1 and "max_attempts" in err


def test_plot_svg(capsys, tmp_path):
    src = tmp_path / "b.json"
    src.write_text(Barcode([(0, float("inf")), (1, 2), (3, float("inf"))]).to_json())
    out = tmp_path / "b.svg"
    assert run(capsys, "plot", src, "--format", "svg", "--out", out)[0] == 0
    svg = out.read_text()
    assert len(re.findall(r'<line class="bar', svg)) == 3
    assert len(re.findall(r'class="bar infinite"', svg)) == 2
    assert svg.startswith('<?xml') and 'version="1.1"' in svg


def test_plot_text(capsys, tmp_path):
    src = tmp_path / "b.json"
    src.write_text(Barcode().to_json())
    code, out, _ = run(capsys, "plot", src)
    assert code == 0 and out == "(empty barcode)\n"


def test_verify_zero_seeds(capsys):
    code, out, _ = run(capsys, "verify", "--seeds", 0)
    assert code == 0 and out


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--seeds", 3, "--genus-max", 1, "--json")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_verify_detects_mutant(capsys):
    code, out, _ = run(capsys, "verify", "--seeds", 3, "--genus-max", 1,
                       "--inject-mutant", "drop-cat3", "--no-oracle")
    assert code == 3
    assert "counterexample" in out
