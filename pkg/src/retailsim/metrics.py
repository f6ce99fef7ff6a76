"""Episode metrics, strategy similarity, instability statistics, aggregates.

Everything here is computable from trajectory files alone; no live engine
is needed.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .errors import ArgumentError

log = logging.getLogger(__name__)

SIMILARITY_FIELDS = ("focus_skus", "sku_supplier_mapping", "news_to_monitor", "sku_to_monitor")


@dataclass
class EpisodeMetrics:
    days: int
    avg_daily_sales: float
    avg_daily_income: float
    expiry_ratio: float
    return_ratio: float


@dataclass
class StabilityStats:
    std_diff: float
    mac: float
    tv: float


def compute_episode_metrics(records: list[dict]) -> EpisodeMetrics:
    if not records:
        raise ArgumentError("trajectory has no day records")
    days = len(records)
    sold = returned = expired = delivered = 0
    income = 0.0
    for record in records:
        report = record["day_report"]
        sold += sum(report.get("sold", {}).values())
        returned += sum(report.get("returned", {}).values())
        expired += sum(report.get("expired", {}).values())
        delivered += sum(a["quantity"] for a in report.get("arrivals", []))
        income += report["revenue"] - report["refunds"]
    return EpisodeMetrics(
        days=days,
        avg_daily_sales=sold / days,
        avg_daily_income=income / days,
        expiry_ratio=expired / delivered if delivered else 0.0,
        return_ratio=returned / sold if sold else 0.0,
    )


def _canonical_entries(field: str, entries: list) -> set[str]:
    out = set()
    for entry in entries:
        if isinstance(entry, dict):
            if "sku_id" in entry and "supplier_id" in entry:
                out.add(f"{entry['sku_id']}|{entry['supplier_id']}")
            else:
                out.add("|".join(f"{k}={entry[k]}" for k in sorted(entry)))
        else:
            out.add(str(entry))
    return out


def _jaccard(a: set, b: set) -> float:
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def execution_similarity(a: dict, b: dict) -> float:
    """Mean Jaccard similarity over the four key execution-strategy fields."""
    exec_a = a.get("execute_strategy", a)
    exec_b = b.get("execute_strategy", b)
    scores = [
        _jaccard(
            _canonical_entries(field, exec_a.get(field, [])),
            _canonical_entries(field, exec_b.get(field, [])),
        )
        for field in SIMILARITY_FIELDS
    ]
    return sum(scores) / len(scores)


def _tokens(statement: str) -> frozenset[str]:
    return frozenset(re.findall(r"[a-z0-9]+", statement.lower()))


def fallback_macro_judge(a: list[str], b: list[str]) -> float:
    """Deterministic judge: symmetrized mean best-match token-set Jaccard."""
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    ta = [_tokens(s) for s in a]
    tb = [_tokens(s) for s in b]

    def one_way(xs, ys):
        return sum(max(_jaccard(x, y) for y in ys) for x in xs) / len(xs)

    return 0.5 * (one_way(ta, tb) + one_way(tb, ta))


def macro_similarity(a: list[str], b: list[str], judge=None) -> float:
    """Score in [0,1] from a pluggable judge; out-of-range values are clamped."""
    scorer = judge or fallback_macro_judge
    score = float(scorer(a, b))
    if not 0.0 <= score <= 1.0:
        log.warning("macro similarity judge returned %s; clamping to [0, 1]", score)
        score = min(1.0, max(0.0, score))
    return score


def instability(series: list[float]) -> StabilityStats:
    """Dispersion statistics of the first-order differences of a series."""
    if len(series) < 2:
        raise ArgumentError("instability needs a series of length >= 2")
    diffs = [b - a for a, b in zip(series[:-1], series[1:])]
    n = len(diffs)
    mean = sum(diffs) / n
    std = (sum((d - mean) ** 2 for d in diffs) / n) ** 0.5  # population std
    abs_diffs = [abs(d) for d in diffs]
    return StabilityStats(std_diff=std, mac=sum(abs_diffs) / n, tv=sum(abs_diffs))


def similarity_series(records: list[dict], judge=None) -> dict[str, list[float]]:
    """Day-over-day similarity series for the macro and execution layers."""
    strategies = [r["strategy"] for r in records]
    macro = [
        macro_similarity(a.get("macro_strategy", []), b.get("macro_strategy", []), judge)
        for a, b in zip(strategies[:-1], strategies[1:])
    ]
    execution = [
        execution_similarity(a, b)
        for a, b in zip(strategies[:-1], strategies[1:])
    ]
    return {"macro": macro, "execution": execution}


def aggregate_rollouts(episodes: list[EpisodeMetrics]) -> dict:
    if not episodes:
        raise ArgumentError("need at least one episode to aggregate")
    n = len(episodes)
    return {
        "rollouts": n,
        "days_mean": sum(e.days for e in episodes) / n,
        "max_days": max(e.days for e in episodes),
        "avg_daily_sales": sum(e.avg_daily_sales for e in episodes) / n,
        "avg_daily_income": sum(e.avg_daily_income for e in episodes) / n,
        "expiry_ratio": sum(e.expiry_ratio for e in episodes) / n,
        "return_ratio": sum(e.return_ratio for e in episodes) / n,
    }
