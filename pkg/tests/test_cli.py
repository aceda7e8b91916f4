"""End-to-end CLI behavior over the bundled fixtures."""

from __future__ import annotations

import json

import pytest

from timelinekit.cli import main

from tests.conftest import FIXTURES, GOLDEN

MINI = str(FIXTURES / "mini")
DUAL = str(FIXTURES / "dual")
SYNTH = str(FIXTURES / "synth48")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_mini_ok(capsys):
    code, out, _ = run(capsys, "validate", MINI)
    assert code == 0
    assert "2 documents valid" in out or "W_" in out


def test_validate_reports_warnings_but_exits_zero(capsys):
    code, out, _ = run(capsys, "validate", MINI)
    assert code == 0
    assert "W_INTENDED" in out  # "hope to review" in m02


def test_generate_then_check_is_clean(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", MINI, "--layer", "ann1", "-o", str(tmp_path))
    assert code == 0
    assert (tmp_path / "m01.ann1.relations.json").exists()
    code, out, _ = run(capsys, "check", MINI)
    assert code == 0
    assert "no conflicts" in out


def test_generate_matches_golden(capsys, tmp_path):
    run(capsys, "generate", MINI, "--layer", "ann1", "-o", str(tmp_path))
    got = (tmp_path / "m01.ann1.relations.json").read_bytes()
    assert got == (GOLDEN / "mini_m01_relations.json").read_bytes()


def test_generate_stdout_is_deterministic(capsys):
    _, first, _ = run(capsys, "generate", MINI)
    _, second, _ = run(capsys, "generate", MINI)
    assert first == second
    payload = json.loads(first)
    assert payload[0]["doc_id"] == "m01"


def test_iaa_on_dual_replica_prints_kappa(capsys):
    code, out, _ = run(capsys, "iaa", DUAL, "--layer-a", "ann1", "--layer-b", "ann2")
    assert code == 0
    assert "0.8882" in out
    assert "93.88" in out
    code, out, _ = run(capsys, "iaa", DUAL, "--layer-a", "ann1", "--layer-b", "ann2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["kappa"] == 0.8882
    assert payload["relation_micro_f1"] == 93.88
    assert payload["event_f1"] == 100.0
    assert payload["matrix"]["counts"][0] == [397, 11, 0, 26]


def test_split_rejects_bad_ratios(capsys):
    code, _, err = run(capsys, "split", SYNTH, "--train", "0.8", "--dev", "0.3",
                       "--test", "0.2", "--seed", "1")
    assert code == 2
    assert "E_RATIO" in err


def test_split_matches_golden_manifest(capsys):
    code, out, _ = run(capsys, "split", SYNTH, "--train", "0.7", "--dev", "0.1",
                       "--test", "0.2", "--seed", "13")
    assert code == 0
    assert out == (GOLDEN / "synth48_manifest_seed13.json").read_text(encoding="utf-8")


def test_stats_json_matches_golden(capsys):
    code, out, _ = run(capsys, "stats", SYNTH, "--json")
    assert code == 0
    assert out == (GOLDEN / "synth48_stats.json").read_text(encoding="utf-8")


def test_stats_human_table(capsys):
    code, out, _ = run(capsys, "stats", MINI)
    assert code == 0
    assert "Label distribution" in out and "possible pairs" in out


def test_export_matches_golden(capsys, tmp_path):
    out_file = tmp_path / "pairs.csv"
    code, _, _ = run(capsys, "export", MINI, "-o", str(out_file))
    assert code == 0
    assert out_file.read_bytes() == (GOLDEN / "mini_pairs.csv").read_bytes()


def test_export_include_vague_adds_rows(capsys):
    _, base, _ = run(capsys, "export", MINI)
    _, full, _ = run(capsys, "export", MINI, "--include-vague")
    assert len(full.splitlines()) > len(base.splitlines())


def test_eval_round_trip_perfect(capsys, tmp_path):
    gold = tmp_path / "gold.csv"
    run(capsys, "export", MINI, "-o", str(gold))
    code, out, _ = run(capsys, "eval", "--gold", str(gold), "--pred", str(gold), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["micro_f1"] == 100.0
    assert all(s["f1"] == 100.0 for s in payload["per_label"].values() if s["support"])


def test_eval_coverage_failure(capsys, tmp_path):
    gold = tmp_path / "gold.csv"
    run(capsys, "export", MINI, "-o", str(gold))
    pred = tmp_path / "pred.csv"
    lines = gold.read_text(encoding="utf-8").splitlines()
    pred.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
    code, _, err = run(capsys, "eval", "--gold", str(gold), "--pred", str(pred))
    assert code == 2
    assert "E_COVERAGE" in err


def test_ablate_partitions(capsys):
    code, out, _ = run(capsys, "ablate", MINI, "--by", "window", "--threshold", "2",
                       "--include-vague")
    assert code == 0
    payload = json.loads(out)
    assert payload["split_a"] + payload["split_b"] == 27


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["generate", MINI, "--frobnicate"])
    assert info.value.code == 2


def test_missing_corpus_is_io_error(capsys, monkeypatch):
    monkeypatch.delenv("TIMELINE_DATA", raising=False)
    code, _, err = run(capsys, "validate")
    assert code == 2

    code, _, err = run(capsys, "validate", "/nonexistent/corpus")
    assert code == 2
    assert "E_SCHEMA" in err


def test_env_var_default_corpus(capsys, monkeypatch):
    monkeypatch.setenv("TIMELINE_DATA", MINI)
    code, out, _ = run(capsys, "stats")
    assert code == 0
    assert "possible pairs" in out
