from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from orbith.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def jsonl(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_orbits_a2(capsys):
    code, out, _ = run(["orbits", "A2"], capsys)
    rows = jsonl(out)
    assert code == 0
    assert [r["S"] for r in rows] == [[], [1], [2], [1, 2]]
    assert rows[0]["dim"] == 6 and rows[0]["structures"] == 6


def test_orbits_a1(capsys):
    code, out, _ = run(["orbits", "A1"], capsys)
    assert code == 0 and len(jsonl(out)) == 2


@pytest.mark.parametrize("argv", [["orbits", "Z9"], ["sweep", "--types", ""], ["verify"], ["verify", "A2", "--sigma", "99"]])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "A2", "--format", "xml"])
    assert exc.value.code == 2


def test_verify_full_flag(capsys):
    code, out, _ = run(["verify", "A2", "--full-flag"], capsys)
    rows = jsonl(out)
    assert code == 0
    assert [r["verdict"] for r in rows[:-1]] == ["confirmed"] * 6
    assert rows[-1]["summary"]["verdicts"] == {"confirmed": 6}


def test_verify_product_is_trivial(capsys):
    code, out, _ = run(["verify", "A1xA1", "--full-flag"], capsys)
    assert code == 0
    assert {r["verdict"] for r in jsonl(out)[:-1]} == {"trivial"}


def test_verify_replay(capsys):
    code, out, _ = run(["verify", "G2", "--full-flag", "--replay", "--sigma", "0"], capsys)
    (report,) = jsonl(out)[:-1]
    assert code == 0
    assert report["replayOk"] is True
    assert len(report["replay"]["steps"]) == 5


def test_verify_single_orbit(capsys):
    code, out, _ = run(["verify", "B2", "--S", "1"], capsys)
    rows = jsonl(out)[:-1]
    assert code == 0 and len(rows) == 2 and all(r["orbit"]["S"] == [1] for r in rows)


def test_sweep_csv_and_parallel_determinism(capsys, tmp_path):
    code, serial, _ = run(["sweep", "--types", "A2,B2,G2", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(serial)))
    assert rows[0][0] == "type"
    assert len(rows) == 1 + 10 + 12 + 16
    out = tmp_path / "sweep.csv"
    code, _, _ = run(["sweep", "--types", "A2,B2,G2", "--format", "csv", "--parallelism", "2", "--out", str(out)], capsys)
    assert code == 0
    assert out.read_text() == serial


def test_sweep_json_summary(capsys):
    code, out, _ = run(["sweep", "--types", "A3"], capsys)
    rows = jsonl(out)
    assert code == 0
    assert all(r["oracleOk"] and r["replayOk"] for r in rows[:-1])
    assert rows[-1]["summary"]["failures"] == 0


def test_max_rank_filter(capsys):
    code, out, _ = run(["sweep", "--types", "A2,D4", "--max-rank", "2"], capsys)
    assert code == 0
    assert jsonl(out)[-1]["summary"]["types"] == ["A2"]
    code, _, _ = run(["sweep", "--types", "D4", "--max-rank", "2"], capsys)
    assert code == 2


def test_markdown(capsys):
    code, out, _ = run(["verify", "A2", "--full-flag", "--format", "markdown"], capsys)
    assert code == 0
    assert out.startswith("| type |")
    assert "confirmed: 6" in out


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"types": ["A2"], "format": "csv"}))
    code, out, _ = run(["sweep", "--config", str(cfg)], capsys)
    assert code == 0 and out.startswith("type,")
    # flags override the file
    code, out, _ = run(["sweep", "--config", str(cfg), "--format", "json"], capsys)
    assert jsonl(out)[-1]["summary"]["items"] == 10
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(["sweep", "--config", str(cfg)], capsys)[0] == 2


def test_gk_samples(capsys):
    code, out, _ = run(["gk", "A2", "--samples", "100", "--seed", "7"], capsys)
    rows = jsonl(out)
    assert code == 0
    assert len(rows) == 101
    assert rows[-1]["summary"] == {"samples": 100, "violations": 0, "seed": 7}
    code, again, _ = run(["gk", "A2", "--samples", "100", "--seed", "7"], capsys)
    assert again == out


def test_gk_a1(capsys):
    code, out, _ = run(["gk", "A1", "--samples", "1"], capsys)
    assert code == 0 and jsonl(out)[-1]["summary"]["violations"] == 0


def test_constants_and_structures(capsys):
    code, out, _ = run(["constants", "G2"], capsys)
    data = json.loads(out)
    assert code == 0 and data["type"] == "G2"
    code, out, _ = run(["structures", "B2", "--full-flag"], capsys)
    assert code == 0 and len(jsonl(out)) == 8


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "orbith", "orbits", "Q1"], capture_output=True, text=True)
    assert proc.returncode == 2
