"""The three-layer policy record: macro strategy, execution strategy, daily actions."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from .errors import ArgumentError

EXECUTE_FIELDS = (
    "focus_skus",
    "sku_supplier_mapping",
    "news_to_monitor",
    "skus_to_reorder",
    "price_adjustments",
    "sku_to_monitor",
    "other",
)

ACTION_TOOLS = ("place_order", "modify_sku_price")


def empty_execute_strategy() -> dict[str, list]:
    return {name: [] for name in EXECUTE_FIELDS}


@dataclass
class StrategyRecord:
    day: int
    macro_strategy: list[str] = field(default_factory=list)
    execute_strategy: dict[str, list] = field(default_factory=empty_execute_strategy)
    today_action: list[dict] = field(default_factory=list)

    def inherit(self, day: int) -> "StrategyRecord":
        """Next day's draft record: a deep copy with the day advanced."""
        return StrategyRecord(
            day=day,
            macro_strategy=copy.deepcopy(self.macro_strategy),
            execute_strategy=copy.deepcopy(self.execute_strategy),
            today_action=copy.deepcopy(self.today_action),
        )

    def snapshot(self) -> "StrategyRecord":
        return self.inherit(self.day)

    def to_dict(self) -> dict:
        return {
            "day": self.day,
            "macro_strategy": copy.deepcopy(self.macro_strategy),
            "execute_strategy": copy.deepcopy(self.execute_strategy),
            "today_action": copy.deepcopy(self.today_action),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StrategyRecord":
        exec_strategy = empty_execute_strategy()
        exec_strategy.update(data.get("execute_strategy", {}))
        return cls(
            day=data["day"],
            macro_strategy=list(data.get("macro_strategy", [])),
            execute_strategy=exec_strategy,
            today_action=list(data.get("today_action", [])),
        )


def validate_macro(value) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
        raise ArgumentError("macro_strategy must be a list of strings")
    return list(value)


def validate_execute(value, news_enabled: bool) -> dict[str, list]:
    if not isinstance(value, dict):
        raise ArgumentError("execute_strategy must be an object")
    unknown = set(value) - set(EXECUTE_FIELDS)
    if unknown:
        raise ArgumentError(f"unknown execute_strategy fields: {sorted(unknown)}")
    for name, entries in value.items():
        if not isinstance(entries, list):
            raise ArgumentError(f"execute_strategy.{name} must be a list")
    if not news_enabled and value.get("news_to_monitor"):
        raise ArgumentError("news_to_monitor must be empty when news is disabled")
    return {name: copy.deepcopy(entries) for name, entries in value.items()}


def validate_action_list(value) -> list[dict]:
    if not isinstance(value, list):
        raise ArgumentError("action must be a list of {tool, arguments} objects")
    for item in value:
        if not isinstance(item, dict) or set(item) != {"tool", "arguments"}:
            raise ArgumentError("each action needs exactly the fields tool and arguments")
        if item["tool"] not in ACTION_TOOLS:
            raise ArgumentError(f"action tool must be one of {ACTION_TOOLS}")
        if not isinstance(item["arguments"], dict):
            raise ArgumentError("action arguments must be an object")
    return copy.deepcopy(value)
