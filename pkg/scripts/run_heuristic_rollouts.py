#!/usr/bin/env python3
"""Run heuristic-baseline rollouts over several seeds and print aggregates.

Example:
    python3 scripts/run_heuristic_rollouts.py --preset easy --seeds 42 43 44
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from retailsim.config import preset
from retailsim.metrics import aggregate_rollouts, compute_episode_metrics
from retailsim.policy import heuristic_policy, null_agent, run_episode


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--preset", default="easy", choices=["easy", "middle", "hard"])
    parser.add_argument("--seeds", type=int, nargs="+", default=[42, 43, 44])
    parser.add_argument("--agent", default="heuristic", choices=["heuristic", "null"])
    parser.add_argument("--max-days", type=int, default=None)
    args = parser.parse_args()

    factory = heuristic_policy if args.agent == "heuristic" else null_agent
    episodes = []
    print(f"{'seed':>6} {'days':>5} {'sales/day':>10} {'income/day':>11} "
          f"{'expiry':>7} {'returns':>8} {'funds_end':>10}")
    for seed in args.seeds:
        cfg = preset(args.preset)
        cfg.seed = seed
        if args.max_days:
            cfg.max_days = args.max_days
        state, records, days = run_episode(factory, cfg)
        m = compute_episode_metrics(records)
        episodes.append(m)
        print(f"{seed:>6} {days:>5} {m.avg_daily_sales:>10.1f} "
              f"{m.avg_daily_income:>11.2f} {m.expiry_ratio:>7.4f} "
              f"{m.return_ratio:>8.4f} {state.finance.funds:>10.2f}")
    agg = aggregate_rollouts(episodes)
    print(f"\naggregate over {agg['rollouts']} rollouts: "
          f"days mean {agg['days_mean']:.1f} (max {agg['max_days']}), "
          f"sales/day {agg['avg_daily_sales']:.1f}, "
          f"income/day {agg['avg_daily_income']:.2f}, "
          f"expiry {agg['expiry_ratio']:.4f}, returns {agg['return_ratio']:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
