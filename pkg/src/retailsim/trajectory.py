"""Trajectory file I/O: newline-delimited JSON with stable key order.

The first line is a header record ``{"meta": {...}}`` carrying the config
and seed so a log is self-contained for replay; every following line is one
day's record ``{day, date, strategy, tool_calls, day_report}``.  Keys are
sorted and separators fixed so identical runs produce byte-identical files.
"""

from __future__ import annotations

import json

from .config import EpisodeConfig
from .errors import ArgumentError

FORMAT_VERSION = 1


def dumps_stable(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class TrajectoryWriter:
    def __init__(self, path: str, config: EpisodeConfig, seed: int):
        self._fh = open(path, "w", encoding="utf-8", newline="\n")
        header = {"meta": {
            "format_version": FORMAT_VERSION,
            "config": config.to_dict(),
            "seed": seed,
        }}
        self._fh.write(dumps_stable(header) + "\n")
        self._fh.flush()

    def write_record(self, record: dict) -> None:
        self._fh.write(dumps_stable(record) + "\n")
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_trajectory(path: str) -> tuple[dict, list[dict]]:
    """Returns (meta, day records). Raises ArgumentError on malformed files."""
    with open(path, encoding="utf-8") as fh:
        lines = [line for line in fh.read().splitlines() if line.strip()]
    if not lines:
        raise ArgumentError(f"trajectory file {path} is empty")
    try:
        header = json.loads(lines[0])
        records = [json.loads(line) for line in lines[1:]]
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"malformed trajectory {path}: {exc}") from exc
    if "meta" not in header:
        raise ArgumentError(f"trajectory {path} is missing the meta header")
    return header["meta"], records


def script_from_records(records: list[dict]) -> list[dict]:
    """Rebuild a scripted-agent script from logged tool calls."""
    script = []
    for record in records:
        day_calls = {"strategy": [], "execution": []}
        for call in record.get("tool_calls", []):
            day_calls[call["phase"]].append(
                {"tool": call["tool"], "arguments": call.get("arguments", {})}
            )
        script.append(day_calls)
    return script
