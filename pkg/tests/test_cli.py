import csv
import json
import subprocess
import sys

import pytest

from retailsim.cli import main
from retailsim.trajectory import read_trajectory


def _run_short(tmp_path, name="t.ndjson", agent="heuristic", days=5, seed=None):
    out = tmp_path / name
    argv = ["run", "--preset", "easy", "--agent", agent,
            "--max-days", str(days), "--out", str(out)]
    if seed is not None:
        argv += ["--seed", str(seed)]
    assert main(argv) == 0
    return out


def test_run_writes_trajectory_and_summary(tmp_path, capsys):
    out = _run_short(tmp_path)
    meta, records = read_trajectory(str(out))
    assert meta["seed"] == 42 and len(records) == 5
    with open(str(out) + ".summary.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    assert rows[0]["Days"] == "5"
    assert float(rows[0]["AvgDailySales"]) > 0


def test_run_requires_config_or_preset(tmp_path, capsys):
    rc = main(["run", "--agent", "null", "--out", str(tmp_path / "x.ndjson")])
    assert rc == 2
    assert "config error" in capsys.readouterr().err


def test_run_rejects_unknown_agent(tmp_path, capsys):
    rc = main(["run", "--preset", "easy", "--agent", "wizard",
               "--out", str(tmp_path / "x.ndjson")])
    assert rc == 2


def test_replay_verifies(tmp_path, capsys):
    out = _run_short(tmp_path)
    assert main(["replay", str(out)]) == 0
    assert "no divergences" in capsys.readouterr().out


def test_replay_detects_tampering(tmp_path, capsys):
    out = _run_short(tmp_path)
    lines = out.read_text().splitlines()
    record = json.loads(lines[1])
    record["day_report"]["revenue"] += 1.0
    lines[1] = json.dumps(record, sort_keys=True, separators=(",", ":"))
    out.write_text("\n".join(lines) + "\n")
    assert main(["replay", str(out)]) == 1
    assert "revenue" in capsys.readouterr().out


def test_report_multiple_trajectories(tmp_path):
    a = _run_short(tmp_path, "a.ndjson", seed=42)
    b = _run_short(tmp_path, "b.ndjson", seed=43)
    report = tmp_path / "report.csv"
    assert main(["report", str(a), str(b), "--out", str(report)]) == 0
    with open(report) as fh:
        rows = list(csv.DictReader(fh))
    assert [r["Trajectory"] for r in rows] == [str(a), str(b), "AGGREGATE"]
    assert rows[2]["MaxDays"] == "5"


def test_report_missing_file(tmp_path, capsys):
    assert main(["report", str(tmp_path / "ghost.ndjson")]) == 1


def _serve(args, lines, timeout=60):
    proc = subprocess.run(
        [sys.executable, "-m", "retailsim", "serve", *args],
        input="".join(line + "\n" for line in lines),
        capture_output=True, text=True, timeout=timeout,
    )
    return proc.returncode, [json.loads(l) for l in proc.stdout.splitlines()]


def test_serve_completes_episode(tmp_path):
    out = tmp_path / "wire.ndjson"
    lines = []
    i = 0
    for _ in range(2):
        for tool in ("finish_strategy_phase", "end_today"):
            i += 1
            lines.append(json.dumps({"id": i, "tool": tool, "arguments": {}}))
    rc, msgs = _serve(["--preset", "easy", "--max-days", "2",
                       "--out", str(out)], lines)
    assert rc == 0
    events = [m for m in msgs if "event" in m]
    responses = [m for m in msgs if "id" in m]
    assert events[0] == {"event": "phase_start", "phase": "strategy", "day": 1}
    assert events[-1] == {"event": "episode_end", "reason": "max_days", "days": 2}
    assert [r["id"] for r in responses] == [1, 2, 3, 4]
    assert all(r["ok"] for r in responses)
    meta, records = read_trajectory(str(out))
    assert len(records) == 2


def test_serve_reports_tool_errors_and_malformed_lines():
    lines = [
        "this is not json",
        json.dumps({"id": 1, "tool": "no_such_tool", "arguments": {}}),
        json.dumps({"id": 2, "tool": "end_today", "arguments": {}}),
    ]
    rc, msgs = _serve(["--preset", "easy", "--max-days", "1"], lines)
    # stream ends mid-episode: protocol failure exit code
    assert rc == 3
    by_id = {m.get("id"): m for m in msgs if "id" in m}
    assert by_id[None]["error"]["code"] == "protocol_error"
    assert by_id[1]["error"]["code"] == "unknown_tool"
    assert by_id[2]["error"]["code"] == "phase_gate"


def test_serve_eof_leaves_valid_truncated_trajectory(tmp_path):
    out = tmp_path / "trunc.ndjson"
    lines = [json.dumps({"id": 1, "tool": "finish_strategy_phase", "arguments": {}}),
             json.dumps({"id": 2, "tool": "end_today", "arguments": {}})]
    rc, msgs = _serve(["--preset", "easy", "--max-days", "5",
                       "--out", str(out)], lines)
    assert rc == 3
    meta, records = read_trajectory(str(out))
    assert len(records) == 1
    assert records[0]["day"] == 1
