import json
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def corpus(name: str) -> str:
    return str(CORPUS / f"{name}.json")


def test_analyze_minimal_exit_zero(run_cli):
    r = run_cli("analyze", corpus("sl3"))
    assert r.code == 0
    doc = r.json
    assert doc["verdict"] == "minimal" and doc["matched_case"] == "i"


def test_analyze_not_minimal_embeds_verification(run_cli):
    r = run_cli("analyze", corpus("sp4"))
    assert r.code == 0
    doc = r.json
    assert doc["verdict"] == "not_minimal"
    assert doc["verification"]["ok"] is True
    assert all(c["passed"] for c in doc["verification"]["checks"])


def test_analyze_not_applicable_exit_two(run_cli):
    r = run_cli("analyze", corpus("sl2"))
    assert r.code == 2
    assert r.json["verdict"] == "not_applicable"


def test_analyze_unsupported_exit_three(run_cli):
    r = run_cli("analyze", corpus("so4_anisotropic"))
    assert r.code == 3
    assert r.json["verdict"] == "unsupported"


def test_analyze_malformed_exit_one(run_cli):
    r = run_cli("analyze", corpus("malformed"))
    assert r.code == 1
    doc = r.json
    assert doc["error"] == "parse_error"
    assert doc["path"] == "$.diagonal[1]"


def test_rank_gauss(run_cli):
    r = run_cli("rank", corpus("res_sl2_gauss"))
    assert r.code == 0
    assert r.json == {"q_rank": 1, "real_rank": 1, "s_g_nonempty": False}


def test_rank_sl3(run_cli):
    r = run_cli("rank", corpus("sl3"))
    assert r.json == {"q_rank": 2, "real_rank": 2, "s_g_nonempty": True}


def test_witness_command(run_cli):
    r = run_cli("witness", corpus("so_1m1m135"))
    assert r.code == 0
    assert "witness" in r.json


def test_verify_roundtrip(run_cli, tmp_path):
    r = run_cli("analyze", corpus("sp4"))
    verdict_path = tmp_path / "verdict.json"
    verdict_path.write_text(r.stdout)
    r2 = run_cli("verify", str(verdict_path))
    assert r2.code == 0
    assert r2.json["verification"]["ok"] is True


def test_verify_rejects_corrupted_witness(run_cli, tmp_path):
    r = run_cli("analyze", corpus("sp4"))
    doc = r.json
    # corrupt the claimed nonsquare into a square
    emb = doc["witness"]["embedding"]
    emb["a_value"] = "4"
    emb["form_coeffs"] = emb["form_coeffs"][:4] + ["4"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    r2 = run_cli("verify", str(p))
    assert r2.code == 3
    assert r2.json["verification"]["ok"] is False


def test_verify_requires_witness_document(run_cli, tmp_path):
    p = tmp_path / "min.json"
    r = run_cli("analyze", corpus("sl3"))
    p.write_text(r.stdout)
    r2 = run_cli("verify", str(p))
    assert r2.code == 2
    assert r2.json["error"] == "nothing_to_verify"


def test_form_hilbert(run_cli):
    r = run_cli("form", "hilbert", "--", "-1", "-1", "2")
    assert r.code == 0 and r.stdout.strip() == "-1"
    r2 = run_cli("form", "hilbert", "2", "3", "real")
    assert r2.stdout.strip() == "1"


def test_form_ramify(run_cli):
    r = run_cli("form", "ramify", "--", "-1", "-1")
    assert r.json == {"finite": [2], "infinite": True}
    r2 = run_cli("form", "ramify", "2", "3")
    assert r2.json == {"finite": [2, 3], "infinite": False}


def test_form_witt_and_diag(run_cli):
    r = run_cli("form", "witt", "1,-1,-1,3,5")
    assert r.json["witt_index"] == 1
    assert r.json["anisotropic_dimension"] == 3
    r2 = run_cli("form", "diag", "[[0,1],[1,0]]")
    assert r2.code == 0 and len(r2.json["diagonal"]) == 2


def test_form_isotropic(run_cli):
    r = run_cli("form", "isotropic", "1,-1,-1,3,5")
    assert r.json == {"isotropic": True}
    r2 = run_cli("form", "isotropic", "--place", "3", "--", "-1,3,5")
    assert r2.json == {"isotropic": False}


def test_roots_command(run_cli):
    r = run_cli("roots")
    assert r.code == 0
    lines = r.stdout.strip().splitlines()
    assert len(lines) == 44
    assert all(line.startswith("ok ") for line in lines)


def test_selftest_line_and_determinism(run_cli):
    r = run_cli("selftest")
    assert r.code == 0
    assert r.stdout == (
        "triality 24/24, E6 identities 4/4, F4 C3 ok, hilbert oracle ok\n"
    )
    r2 = run_cli("selftest")
    assert r2.stdout == r.stdout


def test_analyze_deterministic_output(run_cli):
    a = run_cli("analyze", corpus("so_1m1m135")).stdout
    b = run_cli("analyze", corpus("so_1m1m135")).stdout
    assert a == b


def test_missing_file_is_read_error(run_cli):
    r = run_cli("analyze", "/nonexistent/nope.json")
    assert r.code == 1
    assert r.json["error"] == "read_error"
