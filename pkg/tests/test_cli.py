from __future__ import annotations

import json

import pytest

from kkw.cli import main
from kkw.jets import identity_jet, random_jjet
from kkw.verify import ConfigError, RunConfig, parse_n_list, render_markdown, run


def test_parse_n_list():
    assert parse_n_list("6,8,10") == [6, 8, 10]
    assert parse_n_list("6..16") == [6, 8, 10, 12, 14, 16]
    assert parse_n_list("5..9") == [6, 8]
    for bad in ("7", "4", "6,x", "", "a..b"):
        with pytest.raises(ConfigError):
            parse_n_list(bad)


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(n_list=[6], mode="plot").validate()
    with pytest.raises(ConfigError):
        RunConfig(n_list=[6], jets_per_n=0).validate()


def test_verify_pipeline_writes_deterministic_report(tmp_path, monkeypatch):
    monkeypatch.setenv("KKW_THREADS", "1")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--mode", "pipeline", "--n", "6", "--jets", "1", "--seed", "1"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["schema"] == 1
    (entry,) = rep["pipeline"]
    assert [c["verdict"] for c in entry["cases"]] == ["match"] * 5
    assert all(lk["verdict"] == "match" for lk in entry["chain"]["links"])
    assert entry["chain"]["first_failure"] is None


def test_identity_jet_file_reports_zeros(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(json.dumps(identity_jet(6).to_json()))
    assert main(["verify", "--mode", "pipeline", "--jet-file", str(path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    entry = rep["pipeline"][0]
    assert entry["phi"] == "0"
    assert set(entry["chain"]["values"].values()) == {"0"}


def test_soft_mismatch_is_reported_not_fatal(tmp_path, capsys):
    path = tmp_path / "j.json"
    path.write_text(json.dumps(random_jjet(8, 1, "conjugated").to_json()))
    assert main(["verify", "--mode", "pipeline", "--jet-file", str(path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    ff = rep["pipeline"][0]["chain"]["first_failure"]
    assert ff["link"] == "regrouped -> d_form"
    assert ff["left_value"] and ff["right_value"]
    assert rep["summary"] == {"hard_pass": True, "soft_chain_all_match": False, "exit_code": 0}


def test_hard_mismatch_exit_code(monkeypatch, tmp_path):
    import kkw.verify as v

    monkeypatch.setattr(v, "INTERIOR_SPOTS", (("broken expectation", {}, 6, 1),))
    assert main(["verify", "--mode", "interior", "--out", str(tmp_path / "r.json")]) == 2


def test_usage_and_operational_errors(tmp_path, capsys):
    assert main(["verify", "--n", "7"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("[{\n")
    assert main(["verify", "--mode", "pipeline", "--jet-file", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert main(["verify", "--jet-file", str(tmp_path / "missing.json")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--mode", "nonsense"])
    assert exc.value.code == 1


def test_constants_command(tmp_path):
    out = tmp_path / "c.json"
    assert main(["constants", "--n", "6", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    rows = rep["constants"]["6"]["constants"]
    assert len(rows) == 37 and all(r["verdict"] == "match" for r in rows)
    assert all(r["verdict"] == "match" for r in rep["constants"]["6"]["identities"])


def test_interior_command(tmp_path, capsys):
    inv = tmp_path / "inv.json"
    inv.write_text(json.dumps({"RJJ": "1"}))
    assert main(["interior", "--invariants", str(inv), "--n", "6,8"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["values"]["6"] == "4"
    inv.write_text(json.dumps({"RJJ": "1", "Q": "2"}))
    assert main(["interior", "--invariants", str(inv)]) == 1


def test_markdown_rendering(monkeypatch):
    monkeypatch.setenv("KKW_THREADS", "1")
    rep, code = run(RunConfig(n_list=[6], mode="all", seed=2))
    text = render_markdown(rep)
    assert code == 0
    assert "| A0 |" in text and "chain `regrouped -> d_form`: match" in text
