"""Exogenous news events: generation, impact queries, and TTL decay.

Agents only ever see the rendered text of an event; scope, sign, and
magnitude stay hidden so impact must be inferred from prose.  Full records
go to trajectory logs for analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import NewsConfig
from .errors import DisabledError

SCOPE_ORDER = ("neutral", "single_category", "macro_all", "sku_level")
SIDES = ("demand", "supply", "both")

# scope name used on the event record itself
_SCOPE_NAME = {
    "neutral": "neutral",
    "single_category": "category",
    "macro_all": "macro",
    "sku_level": "product",
}

_TEMPLATES = {
    ("macro", "demand", 1): "Consumer confidence is up; shoppers region-wide are spending more.",
    ("macro", "demand", -1): "A local economic slowdown is dampening consumer spending.",
    ("macro", "supply", 1): "Regional freight costs have risen, pushing up wholesale prices.",
    ("macro", "supply", -1): "A logistics glut is driving wholesale prices down across the board.",
    ("macro", "both", 1): "Strong seasonal activity is lifting both demand and wholesale costs.",
    ("macro", "both", -1): "A broad market lull is cooling both demand and wholesale costs.",
    ("category", "demand", 1): "A viral trend has shoppers reaching for {target} products.",
    ("category", "demand", -1): "Health coverage is steering shoppers away from {target} products.",
    ("category", "supply", 1): "A supply squeeze is raising wholesale prices in {target}.",
    ("category", "supply", -1): "A bumper season is lowering wholesale prices in {target}.",
    ("category", "both", 1): "Heavy promotion of {target} is lifting demand and supplier prices.",
    ("category", "both", -1): "Interest in {target} is fading along with supplier prices.",
    ("product", "demand", 1): "A glowing write-up is boosting interest in item {target}.",
    ("product", "demand", -1): "A critical report is hurting interest in item {target}.",
    ("product", "supply", 1): "Suppliers of item {target} report shortages and higher quotes.",
    ("product", "supply", -1): "Suppliers of item {target} are discounting heavily.",
    ("product", "both", 1): "Item {target} is in the spotlight; demand and quotes are climbing.",
    ("product", "both", -1): "Item {target} has fallen out of favor; demand and quotes are slipping.",
}

_NEUTRAL_TEMPLATES = [
    "Local council debates weekend parking rules downtown.",
    "Community fair announced for the end of the month.",
    "Weather service forecasts a mild, uneventful week.",
    "A new mural is unveiled near the shopping district.",
    "Library extends opening hours for the season.",
]


@dataclass
class NewsEvent:
    event_id: int
    scope: str          # macro | category | product | neutral
    target: str | None  # category id, sku id, or None
    side: str           # demand | supply | both
    sign: int           # +1 or -1
    magnitude: float    # >= 0; exactly 0 for neutral
    text: str
    ttl: int
    created_day: int

    def to_dict(self) -> dict:
        return {
            "event_id": self.event_id,
            "scope": self.scope,
            "target": self.target,
            "side": self.side,
            "sign": self.sign,
            "magnitude": self.magnitude,
            "text": self.text,
            "ttl": self.ttl,
            "created_day": self.created_day,
        }


def _covers(event: NewsEvent, sku_id: str, category_id: str) -> bool:
    if event.scope == "macro":
        return True
    if event.scope == "category":
        return event.target == category_id
    if event.scope == "product":
        return event.target == sku_id
    return False  # neutral


def generate_daily_news(day: int, config: NewsConfig, sku_ids: list[str],
                        categories: list[str], rng: np.random.Generator,
                        start_id: int) -> list[NewsEvent]:
    """Generate exactly ``daily_count`` events for the given day."""
    if not config.enabled:
        raise DisabledError("news generation is disabled in this configuration")
    events: list[NewsEvent] = []
    cum = np.cumsum([config.sample_ratios[k] for k in SCOPE_ORDER])
    for i in range(config.daily_count):
        u = rng.random()
        mode = SCOPE_ORDER[int(np.searchsorted(cum, u, side="right").clip(0, 3))]
        scope = _SCOPE_NAME[mode]
        if scope == "neutral":
            text = _NEUTRAL_TEMPLATES[int(rng.integers(len(_NEUTRAL_TEMPLATES)))]
            event = NewsEvent(start_id + i, "neutral", None, "demand", 1, 0.0,
                              text, int(rng.integers(config.ttl_min, config.ttl_max + 1)), day)
        else:
            sign = 1 if rng.random() < 0.5 else -1
            side = SIDES[int(rng.integers(3))]
            magnitude = config.base_scale * config.mode_weights[mode] * (1.0 - rng.random())
            if scope == "category":
                target = categories[int(rng.integers(len(categories)))]
            elif scope == "product":
                target = sku_ids[int(rng.integers(len(sku_ids)))]
            else:
                target = None
            text = _TEMPLATES[(scope, side, sign)].format(target=target)
            ttl = int(rng.integers(config.ttl_min, config.ttl_max + 1))
            event = NewsEvent(start_id + i, scope, target, side, sign, magnitude,
                              text, ttl, day)
        events.append(event)
    return events


def demand_delta(sku_id: str, category_id: str, active: list[NewsEvent]) -> float:
    """Additive utility shift from active demand-side events covering the SKU."""
    total = 0.0
    for event in active:
        if event.side in ("demand", "both") and event.magnitude != 0.0 \
                and _covers(event, sku_id, category_id):
            total += event.sign * event.magnitude
    return total


def supply_multiplier(sku_id: str, category_id: str, active: list[NewsEvent]) -> float:
    """Multiplicative quote factor; each factor floored at 0.05 to stay positive."""
    mult = 1.0
    for event in active:
        if event.side in ("supply", "both") and event.magnitude != 0.0 \
                and _covers(event, sku_id, category_id):
            mult *= max(0.05, 1.0 + event.sign * event.magnitude)
    return mult


def tick_ttl(active: list[NewsEvent]) -> list[NewsEvent]:
    """Decrement every event's TTL; drop the ones that reach zero."""
    survivors = []
    for event in active:
        event.ttl -= 1
        if event.ttl > 0:
            survivors.append(event)
    return survivors
