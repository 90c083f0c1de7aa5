"""Command-line behaviour: selectors, formats, determinism, exit codes."""

import json

import pytest

import rootsys as R
from rootsys.cli import _reports_agree, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_g2(capsys):
    code, out, _ = run_cli(capsys, "gen", "--type", "G2")
    assert code == 0
    data = json.loads(out)
    assert len(data["roots"]) == 6
    assert data["highest_root"] == [3, 2]
    assert data["c_max"] == 3


def test_gen_a1(capsys):
    code, out, _ = run_cli(capsys, "gen", "--type", "A1")
    assert code == 0
    assert len(json.loads(out)["roots"]) == 1


def test_gen_deterministic(capsys):
    _, first, _ = run_cli(capsys, "gen", "--type", "F4")
    _, second, _ = run_cli(capsys, "gen", "--type", "F4")
    assert first == second


def test_gen_rejects_affine_matrix(capsys, tmp_path):
    path = tmp_path / "affine.json"
    path.write_text(json.dumps([[2, -2], [-2, 2]]))
    code, _, err = run_cli(capsys, "gen", "--cartan", str(path))
    assert code == 2
    assert "not positive definite" in err


def test_gen_custom_matrix(capsys, tmp_path):
    path = tmp_path / "b2.json"
    path.write_text(json.dumps([[2, -1], [-2, 2]]))
    code, out, _ = run_cli(capsys, "gen", "--cartan", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["type"] is None
    assert len(data["roots"]) == 4


def test_gen_rejects_bad_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "gen", "--cartan", str(path))
    assert code == 2 and "JSON" in err


def test_gen_requires_selector(capsys):
    code, _, err = run_cli(capsys, "gen")
    assert code == 2
    assert "choose exactly one" in err


def test_exponents_both_e7(capsys):
    code, out, _ = run_cli(capsys, "exponents", "--type", "E7", "--method", "both")
    assert code == 0
    data = json.loads(out)
    assert data["agree"] is True
    assert data["dual"]["exponents"] == [1, 5, 7, 9, 11, 13, 17]
    assert data["dual"]["h"] == 18
    assert data["coxeter"]["exponents"] == data["dual"]["exponents"]


def test_exponents_coxeter_a1(capsys):
    code, out, _ = run_cli(capsys, "exponents", "--type", "A1", "--method", "coxeter")
    assert code == 0
    data = json.loads(out)
    assert data["coxeter"] == {
        "exponents": [1],
        "h": 2,
        "method": "coxeter-eigenvalues",
    }


def test_exponents_dual_g2(capsys):
    code, out, _ = run_cli(capsys, "exponents", "--type", "G2", "--method", "dual")
    assert code == 0
    assert json.loads(out)["dual"]["exponents"] == [1, 5]


def test_reports_agree_helper():
    a = {"exponents": [1, 3], "h": 4}
    assert _reports_agree(a, {"exponents": [1, 3], "h": 4})
    assert not _reports_agree(a, {"exponents": [1, 2], "h": 4})
    assert not _reports_agree(a, {"exponents": [1, 3], "h": 6})


def test_verify_g2(capsys):
    code, out, _ = run_cli(capsys, "verify", "--type", "G2")
    assert code == 0
    data = json.loads(out)
    ledger = data["ledgers"][0]
    assert (ledger["case"], ledger["c_max"], ledger["m2"]) == (1, 3, 5)
    assert all(c["pass"] for c in ledger["checks"].values())


def test_verify_a1_skipped(capsys):
    code, out, _ = run_cli(capsys, "verify", "--type", "A1")
    assert code == 0
    data = json.loads(out)
    assert data["ledgers"] == []
    assert "m2 undefined" in data["skipped"][0]["skipped"]


def test_verify_all_rank_eight(capsys):
    code, out, _ = run_cli(capsys, "verify", "--all", "--max-rank", "8")
    assert code == 0
    data = json.loads(out)
    case1 = [l["type"] for l in data["ledgers"] if l["case"] == 1]
    assert case1 == ["G2"]
    assert all(
        c["pass"] for l in data["ledgers"] for c in l["checks"].values()
    )
    assert data["g2_criterion"]["pass"] is True
    assert "skipped" in data["summary"]


def test_verify_table_format(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--all", "--max-rank", "3", "--format", "table"
    )
    assert code == 0
    assert "c_max" in out.splitlines()[0]
    assert any("G2" in line and "pass" in line for line in out.splitlines())


def test_verify_custom_matrix(capsys, tmp_path):
    path = tmp_path / "c3.json"
    path.write_text(json.dumps(R.build_cartan("C3").to_lists()))
    code, out, _ = run_cli(capsys, "verify", "--cartan", str(path))
    assert code == 0
    ledger = json.loads(out)["ledgers"][0]
    assert ledger["type"] == "custom"
    assert all(c["pass"] for c in ledger["checks"].values())


def test_invalid_type_exit_two(capsys):
    for bad in ("Q5", "D3", "E9"):
        code, _, err = run_cli(capsys, "gen", "--type", bad)
        assert code == 2, bad
        assert err


def test_bad_max_rank(capsys):
    code, _, err = run_cli(capsys, "verify", "--all", "--max-rank", "0")
    assert code == 2 and "--max-rank" in err


def test_out_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run_cli(capsys, "gen", "--type", "A2", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["rank"] == 2


def test_gen_all_emits_array(capsys):
    code, out, _ = run_cli(capsys, "gen", "--all", "--max-rank", "2")
    assert code == 0
    data = json.loads(out)
    assert [d["type"] for d in data] == ["A1", "A2", "B2", "C2", "G2"]


def test_verify_seed_flag(capsys):
    code, out, _ = run_cli(capsys, "verify", "--type", "B2", "--seed", "3")
    assert code == 0
    assert json.loads(out)["ledgers"][0]["type"] == "B2"


def test_verify_exit_one_on_failure(capsys, monkeypatch):
    # exit-code plumbing: a failing check must flip the exit code to 1
    import rootsys.cli as cli
    from rootsys.verify import CheckResult, VerificationLedger

    def fake_ledger(rs, **kwargs):
        return VerificationLedger(
            rs.label or "custom", rs.rank, 1, 2, 2, None,
            {"main_relation": CheckResult("main_relation", False, [{"boom": 1}])},
        )

    monkeypatch.setattr(cli, "build_ledger", fake_ledger)
    code, out, _ = run_cli(capsys, "verify", "--type", "A2")
    assert code == 1
    assert not json.loads(out)["ledgers"][0]["checks"]["main_relation"]["pass"]


def test_exponents_exit_one_on_disagreement(capsys, monkeypatch):
    import rootsys.cli as cli

    real = cli._exponent_entry

    def fake_entry(label, cartan, method):
        entry = real(label, cartan, method)
        if "agree" in entry:
            entry["agree"] = False
        return entry

    monkeypatch.setattr(cli, "_exponent_entry", fake_entry)
    code, _, _ = run_cli(capsys, "exponents", "--type", "A2", "--method", "both")
    assert code == 1
