"""Command-line interface: run, replay, report, and serve subcommands."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys

from . import metrics as metrics_mod
from . import policy as policy_mod
from .config import EpisodeConfig, load_config, preset
from .errors import ConfigError, SimError
from .policy import run_episode
from .toolapi import ToolApi
from .trajectory import (
    TrajectoryWriter,
    dumps_stable,
    read_trajectory,
    script_from_records,
)

log = logging.getLogger("retailsim")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_PROTOCOL = 3


def _setup_logging() -> None:
    level = os.environ.get("SIM_LOG_LEVEL", "error").lower()
    numeric = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=numeric.get(level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")


def _resolve_config(args) -> EpisodeConfig:
    if args.config:
        cfg = load_config(args.config)
    elif args.preset:
        cfg = preset(args.preset)
    else:
        raise ConfigError("one of --config or --preset is required")
    if args.seed is not None:
        cfg.seed = args.seed
    if getattr(args, "max_days", None) is not None:
        cfg.max_days = args.max_days
    cfg.validate()
    return cfg


def _agent_factory(spec: str):
    if spec == "heuristic":
        return policy_mod.heuristic_policy
    if spec == "null":
        return policy_mod.null_agent
    if spec.startswith("scripted:"):
        path = spec.split(":", 1)[1]
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read script {path}: {exc}") from exc
        script = data["days"] if isinstance(data, dict) else data
        return policy_mod.scripted_agent(script)
    raise ConfigError(f"unknown agent spec {spec!r}")


METRIC_COLUMNS = [
    "Trajectory", "Days", "AvgDailySales", "AvgDailyIncome", "ExpiryRatio",
    "ReturnRatio", "MacroStdDiff", "MacroMAC", "MacroTV",
    "ExecStdDiff", "ExecMAC", "ExecTV",
]


def _metric_row(name: str, records: list[dict]) -> dict:
    episode = metrics_mod.compute_episode_metrics(records)
    row = {
        "Trajectory": name,
        "Days": episode.days,
        "AvgDailySales": f"{episode.avg_daily_sales:.4f}",
        "AvgDailyIncome": f"{episode.avg_daily_income:.2f}",
        "ExpiryRatio": f"{episode.expiry_ratio:.4f}",
        "ReturnRatio": f"{episode.return_ratio:.4f}",
    }
    series = metrics_mod.similarity_series(records)
    for label, key in (("Macro", "macro"), ("Exec", "execution")):
        if len(series[key]) >= 2:
            stats = metrics_mod.instability(series[key])
            row[f"{label}StdDiff"] = f"{stats.std_diff:.4f}"
            row[f"{label}MAC"] = f"{stats.mac:.4f}"
            row[f"{label}TV"] = f"{stats.tv:.4f}"
        else:
            row[f"{label}StdDiff"] = row[f"{label}MAC"] = row[f"{label}TV"] = ""
    return row, episode


def cmd_run(args) -> int:
    cfg = _resolve_config(args)
    factory = _agent_factory(args.agent)
    writer = TrajectoryWriter(args.out, cfg, cfg.seed)
    try:
        state, records, days = run_episode(
            factory, cfg, seed=cfg.seed, on_record=writer.write_record
        )
    finally:
        writer.close()
    row, _ = _metric_row(args.out, records)
    summary_path = args.out + ".summary.csv"
    with open(summary_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=METRIC_COLUMNS)
        w.writeheader()
        w.writerow(row)
    print(f"episode complete: {days} days, trajectory {args.out}, summary {summary_path}")
    return EXIT_OK


def cmd_replay(args) -> int:
    meta, records = read_trajectory(args.trajectory)
    cfg = EpisodeConfig.from_dict(meta["config"])
    script = script_from_records(records)
    factory = policy_mod.scripted_agent(script)
    _, replayed, _ = run_episode(factory, cfg, seed=meta["seed"], max_days=len(records))
    limit = min(len(records), len(replayed))
    for original, fresh in zip(records[:limit], replayed[:limit]):
        a = dumps_stable(original["day_report"])
        b = dumps_stable(fresh["day_report"])
        if a != b:
            field = _first_divergent_field(original["day_report"], fresh["day_report"])
            print(f"divergence at day {original['day']}: field {field}")
            return EXIT_FAILURE
    if len(replayed) != len(records):
        print(f"divergence: logged {len(records)} days, replay produced {len(replayed)}")
        return EXIT_FAILURE
    print(f"verified: {len(records)} days, no divergences")
    return EXIT_OK


def _first_divergent_field(a: dict, b: dict) -> str:
    for key in sorted(set(a) | set(b)):
        if dumps_stable(a.get(key)) != dumps_stable(b.get(key)):
            return key
    return "<unknown>"


def cmd_report(args) -> int:
    rows = []
    episodes = []
    errors = 0
    for path in args.trajectories:
        try:
            _, records = read_trajectory(path)
            row, episode = _metric_row(path, records)
            rows.append(row)
            episodes.append(episode)
        except (SimError, OSError) as exc:
            errors += 1
            print(f"error reading {path}: {exc}", file=sys.stderr)
    if not episodes:
        print("no readable trajectories", file=sys.stderr)
        return EXIT_FAILURE
    agg = metrics_mod.aggregate_rollouts(episodes)
    rows.append({
        "Trajectory": "AGGREGATE",
        "Days": f"{agg['days_mean']:.2f}",
        "AvgDailySales": f"{agg['avg_daily_sales']:.4f}",
        "AvgDailyIncome": f"{agg['avg_daily_income']:.2f}",
        "ExpiryRatio": f"{agg['expiry_ratio']:.4f}",
        "ReturnRatio": f"{agg['return_ratio']:.4f}",
        "MacroStdDiff": "", "MacroMAC": "", "MacroTV": "",
        "ExecStdDiff": "", "ExecMAC": "", "ExecTV": "",
    })
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=METRIC_COLUMNS + ["MaxDays"])
        w.writeheader()
        for row in rows:
            if row["Trajectory"] == "AGGREGATE":
                row["MaxDays"] = agg["max_days"]
            w.writerow(row)
    finally:
        if args.out:
            out.close()
    return EXIT_OK if errors == 0 else EXIT_FAILURE


def cmd_serve(args, stdin=None, stdout=None) -> int:
    """Drive an episode over the stdio wire protocol."""
    from .engine import init_episode

    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    cfg = _resolve_config(args)
    state = init_episode(cfg, cfg.seed)
    api = ToolApi(state)
    writer = TrajectoryWriter(args.out, cfg, cfg.seed) if args.out else None

    def emit(message: dict) -> None:
        stdout.write(dumps_stable(message) + "\n")
        stdout.flush()

    log_start = len(api.call_log)
    strategy_snapshot = state.strategy.to_dict()
    emit({"event": "phase_start", "phase": state.phase, "day": state.day})
    clean = False
    try:
        for line in stdin:
            line = line.strip()
            if not line:
                continue
            try:
                request = json.loads(line)
                req_id = request["id"]
                tool = request["tool"]
                arguments = request.get("arguments", {})
            except (json.JSONDecodeError, KeyError, TypeError):
                emit({"id": None, "ok": False,
                      "error": {"code": "protocol_error", "message": "malformed request"}})
                continue
            day_before = state.day
            result = api.dispatch(tool, arguments)
            if result.ok:
                emit({"id": req_id, "ok": True, "result": result.result})
            else:
                emit({"id": req_id, "ok": False, "error": result.error})
            if result.ok and tool == "finish_strategy_phase":
                strategy_snapshot = state.strategy.to_dict()
                emit({"event": "phase_start", "phase": state.phase, "day": state.day})
            elif result.ok and tool == "end_today":
                if writer:
                    writer.write_record({
                        "day": day_before,
                        "date": state.date_for_day(day_before),
                        "strategy": strategy_snapshot,
                        "tool_calls": api.call_log[log_start:],
                        "day_report": state.last_report,
                    })
                log_start = len(api.call_log)
                if state.terminated or state.day > cfg.max_days:
                    reason = state.termination_reason or "max_days"
                    emit({"event": "episode_end", "reason": reason,
                          "days": state.day - 1})
                    clean = True
                    break
                emit({"event": "phase_start", "phase": state.phase, "day": state.day})
    finally:
        if writer:
            writer.close()
    if not clean:
        log.error("client disconnected mid-episode")
        return EXIT_PROTOCOL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="retailsim",
                                     description="Long-horizon retail store simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="path to a JSON config file")
        p.add_argument("--preset", choices=["easy", "middle", "hard"],
                       help="built-in configuration")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--max-days", type=int, default=None, dest="max_days")

    p_run = sub.add_parser("run", help="run one episode")
    common(p_run)
    p_run.add_argument("--agent", default="heuristic",
                       help="heuristic | null | scripted:PATH")
    p_run.add_argument("--out", required=True, help="trajectory output path")
    p_run.set_defaults(func=cmd_run)

    p_replay = sub.add_parser("replay", help="verify a trajectory by re-execution")
    p_replay.add_argument("trajectory")
    p_replay.set_defaults(func=cmd_replay)

    p_report = sub.add_parser("report", help="compute metrics from trajectories")
    p_report.add_argument("trajectories", nargs="+")
    p_report.add_argument("--out", default=None)
    p_report.set_defaults(func=cmd_report)

    p_serve = sub.add_parser("serve", help="drive an episode over stdio")
    common(p_serve)
    p_serve.add_argument("--out", default=None, help="trajectory output path")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
