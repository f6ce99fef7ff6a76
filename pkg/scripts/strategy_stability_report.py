#!/usr/bin/env python3
"""Compute day-over-day strategy stability statistics for trajectory files.

Example:
    retailsim run --preset easy --out /tmp/run.ndjson
    python3 scripts/strategy_stability_report.py /tmp/run.ndjson
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from retailsim.metrics import instability, similarity_series
from retailsim.trajectory import read_trajectory


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("trajectories", nargs="+")
    args = parser.parse_args()

    for path in args.trajectories:
        _, records = read_trajectory(path)
        series = similarity_series(records)
        print(f"{path} ({len(records)} days)")
        for layer in ("macro", "execution"):
            values = series[layer]
            if len(values) < 2:
                print(f"  {layer:>9}: not enough days")
                continue
            stats = instability(values)
            mean = sum(values) / len(values)
            print(f"  {layer:>9}: mean similarity {mean:.4f}  "
                  f"std_diff {stats.std_diff:.4f}  mac {stats.mac:.4f}  "
                  f"tv {stats.tv:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
