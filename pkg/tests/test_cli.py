import json

import pytest

from prekosmos.cli import main
from prekosmos.documents import data_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


DATA = [
    "trivial.json", "z2.json", "z3.json", "z4.json", "klein.json", "s3.json", "kappa.json", "oz2.json",
    "oz2-idempotent.json", "oz3.json", "os3.json", "s3-regular-torsor.json", "trivial-torsor.json",
    "sqrt2-torsor.json", "z2-sign-set.json", "oz2-sign.json", "z4-to-z2.json", "s3-identity.json",
    "s3-conjugation.json", "s3-two-cell.json",
]


@pytest.mark.parametrize("name", DATA)
def test_bundled_documents_check_clean(capsys, name):
    code, doc = run_json(capsys, "check", data_path(name))
    assert code == 0 and doc["passed"]
    assert doc["tool"] == "prekosmos" and doc["command"] == "check"


def test_broken_associativity_is_located(capsys):
    code, doc = run_json(capsys, "check", data_path("broken-assoc.json"))
    assert code == 1 and not doc["passed"]
    reports = doc["sections"][0]["reports"]
    first = next(r for r in reports if not r["passed"])
    assert first["name"] == "associativity"
    assert first["witness"]["index"] == 14
    assert first["data"]["triple"] == [1, 1, 2]
    # the digest is recorded even though validation failed
    assert list(doc["inputs"]) == ["broken-assoc.json"]


def test_malformed_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "prekosmos:" in err


def test_schema_violation_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "rat-hopf", "dim": 1, "mul": [[1]], "unit": [1], "comul": [["1"]],
                               "counit": ["1"], "antipode": [["1"]]}))
    assert run(capsys, "check", bad)[0] == 2


def test_missing_file_and_bad_usage_exit_2(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "absent.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "reconstruct")[0] == 2
    assert run(capsys, "check", data_path("z2.json"), "--probe-limit", "0")[0] == 2


def test_invalid_group_with_valid_json_exits_1(capsys, tmp_path):
    doc = {"kind": "finset-group", "order": 2, "mul": [[0, 1], [1, 1]], "unit": 0, "inv": [0, 1]}
    p = tmp_path / "g.json"
    p.write_text(json.dumps(doc))
    code, out = run_json(capsys, "check", p)
    assert code == 1 and not out["passed"]


@pytest.mark.parametrize("name", ["z3.json", "s3.json", "oz2.json", "trivial.json", "oz3.json"])
def test_reconstruct(capsys, name):
    code, doc = run_json(capsys, "reconstruct", "--object", data_path(name))
    assert code == 0 and doc["passed"]
    original = json.loads(data_path(name).read_text())
    rec = doc["reconstructed"]
    if original["kind"] == "finset-group":
        assert rec["mul"] == original["mul"] and rec["unit"] == original["unit"]
    else:
        assert rec["comul"] == original["comul"]
    assert len(doc["probes"]) == 5


def test_reconstruct_respects_limits(capsys):
    code, doc = run_json(capsys, "reconstruct", "--object", data_path("s3.json"), "--probe-limit", "2")
    assert code == 0 and len(doc["probes"]) == 2
    assert run(capsys, "reconstruct", "--object", data_path("s3.json"), "--max-order", "4")[0] == 2


def test_reconstruct_rejects_non_group(capsys):
    assert run(capsys, "reconstruct", "--object", data_path("z2-sign-set.json"))[0] == 2


def test_twist_s3_regular(capsys):
    code, doc = run_json(capsys, "twist", "--group", data_path("s3.json"), "--torsor", data_path("s3-regular-torsor.json"))
    assert code == 0 and doc["passed"]
    assert doc["twisted_group"]["order"] == 6 and doc["points"] == 6


def test_twist_sqrt2_has_no_rational_points(capsys):
    code, doc = run_json(capsys, "twist", "--group", data_path("oz2.json"), "--torsor", data_path("sqrt2-torsor.json"))
    assert code == 0 and doc["passed"]
    assert doc["rational_points"] == 0 and doc["twisted_group"]["dim"] == 2


def test_twist_group_mismatch_exits_2(capsys):
    assert run(capsys, "twist", "--group", data_path("z3.json"), "--torsor", data_path("s3-regular-torsor.json"))[0] == 2


def test_builtin_and_inline_refs(capsys, tmp_path):
    torsor = {"kind": "gal-torsor", "group": "Z/2", "size": 2, "action": [[0, 1], [1, 0]]}
    p = tmp_path / "t.json"
    p.write_text(json.dumps(torsor))
    code, doc = run_json(capsys, "check", p)
    assert code == 0 and doc["passed"]
    inline = dict(torsor, group={"kind": "finset-group", "order": 2, "mul": [[0, 1], [1, 0]], "unit": 0,
                                 "inv": [0, 1]})
    p.write_text(json.dumps(inline))
    assert run(capsys, "check", p)[0] == 0


def test_text_output_is_default(capsys):
    code, out, _ = run(capsys, "check", data_path("z2.json"))
    assert code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)
    assert "PASS" in out


def small_roster(tmp_path, entries):
    p = tmp_path / "roster.json"
    p.write_text(json.dumps({"kind": "roster", "entries": entries}))
    return p


def test_suite_report_is_byte_identical(capsys, tmp_path):
    roster = small_roster(tmp_path, [str(data_path("z2.json")), str(data_path("oz2.json"))])
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "suite", "--roster", roster, "--report", a)[0] == 0
    assert run(capsys, "suite", "--roster", roster, "--report", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["command"] == "suite" and "roster.json" in doc["roster_files"]


def test_suite_seed_is_recorded_and_deterministic(capsys, tmp_path, monkeypatch):
    roster = small_roster(tmp_path, ["Z/2"])
    monkeypatch.setenv("PREKOSMOS_SEED", "17")
    _, first = run_json(capsys, "suite", "--roster", roster, "--side", "galois")
    _, second = run_json(capsys, "suite", "--roster", roster, "--side", "galois")
    assert first == second
    assert "17" in json.dumps(first)


def test_suite_with_broken_entry_fails_but_reports(capsys):
    code, doc = run_json(capsys, "suite", "--roster", data_path("roster-broken.json"))
    assert code == 1 and not doc["passed"]
    assert len(doc["criteria"]) == 10
    details = {d["name"]: d["passed"] for d in doc["criteria"][0]["details"]}
    assert details["broken-assoc.json validates"] is False
    assert details["Z/2 validates"] and details["O(Z/2) validates"]


def test_suite_with_empty_roster_passes_with_warning(capsys):
    code, doc = run_json(capsys, "suite", "--roster", data_path("roster-empty.json"))
    assert code == 0
    assert doc["warnings"]
