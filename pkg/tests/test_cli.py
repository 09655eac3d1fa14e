import io
import json

import pytest

from weylgroupoid.cli import main
from weylgroupoid.schemefile import SchemeFileError, parse_scheme_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_bruhat(capsys):
    code, out, _ = run(capsys, "validate", "examples/bruhat.json")
    assert code == 0
    assert "R4: pass" in out and "|R^e_+| = 8" in out


def test_poincare_c(capsys):
    code, out, _ = run(capsys, "poincare", "examples/bruhat.json", "--target", "c")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "1,3,6,7,6,7,6,3,1" and lines[1] == "unimodal: false"


def test_roots_a2(capsys):
    code, out, _ = run(capsys, "roots", "examples/a2.json", "--object", "a")
    assert code == 0
    assert [json.loads(x) for x in out.splitlines()] == [[1, 0], [0, 1], [1, 1]]


def test_hom_and_poset(capsys):
    code, out, _ = run(capsys, "hom", "bruhat", "--target", "a")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(rows) == 40
    assert {"source": "c", "target": "a", "word": "1,2", "length": 2, "label": "12^c"} in rows
    code, out, _ = run(capsys, "poset", "bruhat", "--target", "a", "--format", "dot")
    assert code == 0 and 'label="12131232^e"' in out and out.startswith("digraph")
    code, out, _ = run(capsys, "poset", "a2", "--target", "a", "--format", "json")
    doc = json.loads(out)
    assert len(doc["elements"]) == 6 and len(doc["covers"]) == 6


def test_meet_join(capsys):
    args = ["--target", "a", "--u", "1,2", "--su", "c", "--v", "3", "--sv", "a"]
    code, out, _ = run(capsys, "meet", "bruhat", *args)
    assert code == 0 and json.loads(out)["label"] == "id^a"
    code, out, _ = run(capsys, "join", "bruhat", *args)
    assert json.loads(out)["length"] == 4


def test_interval(capsys):
    code, out, _ = run(capsys, "interval", "bruhat", "--target", "a", "--u", "id", "--su", "a",
                       "--v", "1,2,1,3,1,2,3,2", "--sv", "e")
    doc = json.loads(out)
    assert code == 0 and doc["classification"] == "Sphere(1)" and doc["reduced_euler"] == -1
    code, _, err = run(capsys, "interval", "bruhat", "--target", "a", "--u", "1", "--su", "b",
                       "--v", "id", "--sv", "a")
    assert code == 2 and "not below" in err


def test_complex_and_arrangement(capsys):
    code, out, _ = run(capsys, "complex", "bruhat", "--object", "b")
    doc = json.loads(out)
    assert code == 0 and doc["f_vector"] == [22, 60, 40] and doc["closed"]
    code, out, _ = run(capsys, "complex", "a2", "--object", "a", "--format", "dot")
    assert code == 0 and out.count(" -- ") == 6
    code, out, _ = run(capsys, "arrangement", "bruhat", "--object", "a")
    doc = json.loads(out)
    assert code == 0 and doc["chamber_count"] == 40 and doc["simplicial"]


def test_check(capsys):
    code, out, _ = run(capsys, "check", "bruhat", "--object", "c")
    assert code == 0 and out.splitlines()[-1].startswith("summary: ")
    code, out, _ = run(capsys, "check", "a2", "--json")
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", "affine_a1")[0] == 1
    assert run(capsys, "check", "affine_a1")[0] == 1
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"rank": 2,\n "objects": ["a"]\n "x": 1}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and ":3:" in err
    assert run(capsys, "meet", "bruhat", "--target", "a", "--u", "7", "--su", "a", "--v", "1", "--sv", "b")[0] == 2
    assert run(capsys, "hom", "bruhat", "--target", "q")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_invalid_scheme_exit_1(capsys, tmp_path):
    raw = parse_scheme_file("bruhat")
    raw["reflections"]["1"]["b"] = "c"
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(raw))
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 1 and "C1" in out
    assert run(capsys, "hom", str(p), "--target", "a")[0] == 1


def test_dimension_mismatch_names_object(tmp_path):
    raw = parse_scheme_file("a2")
    raw["cartan"]["a"] = [[2, -1, 0], [-1, 2, 0]]
    with pytest.raises(SchemeFileError, match="cartan.a: dimension mismatch"):
        parse_scheme_file(io.StringIO(json.dumps(raw)))


def test_missing_field():
    with pytest.raises(SchemeFileError, match="missing field 'cartan'"):
        parse_scheme_file(io.StringIO('{"rank": 1, "objects": ["a"], "reflections": {}}'))


def test_output_is_deterministic(capsys):
    outs = set()
    for _ in range(2):
        for cmd in (["poset", "bruhat", "--target", "c", "--format", "json"],
                    ["complex", "bruhat", "--object", "d"], ["arrangement", "bruhat", "--object", "e"]):
            main(cmd)
        outs.add(capsys.readouterr().out)
    assert len(outs) == 1
