"""Agent-facing tool catalog: phase gating, validation, and dispatch.

Read tools are available in both phases and never mutate state.  Strategy
edits are legal only in the strategy phase; orders, price changes, and
end-of-day only in the execution phase.  Every dispatched call is appended
to the call log with its outcome and any anomaly flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import engine as engine_mod
from . import finance as finance_mod
from . import strategy as strategy_mod
from .engine import PHASE_EXECUTION, PHASE_STRATEGY, WorldState
from .errors import (
    ArgumentError,
    DisabledError,
    GateError,
    InvalidActionError,
    SimError,
    UnknownToolError,
)
from .money import round2

PRICE_FLAG_THRESHOLD = 50.0
QUANTITY_FLAG_CAPACITY_SHARE = 0.25

READ_TOOLS = (
    "view_funds_and_date",
    "view_inventory",
    "view_sku_sales_history",
    "view_sku_avg_ratings",
    "view_sku_recent_reviews",
    "view_current_date_supplier_prices",
    "view_current_orders",
    "view_today_news",
    "memory_write",
    "memory_read",
)
STRATEGY_TOOLS = (
    "set_macro_strategy",
    "set_execute_strategy",
    "set_action",
    "finish_strategy_phase",
)
EXECUTION_TOOLS = ("place_order", "modify_sku_price", "end_today")
ALL_TOOLS = READ_TOOLS + STRATEGY_TOOLS + EXECUTION_TOOLS


@dataclass
class ToolCall:
    call_id: int
    tool: str
    arguments: dict


@dataclass
class ToolResult:
    call_id: int
    ok: bool
    result: object = None
    error: dict | None = None
    flags: list[dict] = field(default_factory=list)


def _require(arguments: dict, name: str, types, required: bool = True):
    if name not in arguments:
        if required:
            raise ArgumentError(f"missing argument {name!r}")
        return None
    value = arguments[name]
    if not isinstance(value, types) or isinstance(value, bool):
        raise ArgumentError(f"argument {name!r} has the wrong type")
    return value


def _int_arg(arguments: dict, name: str, required: bool = True):
    value = _require(arguments, name, (int, float), required)
    if value is None:
        return None
    if isinstance(value, float) and not value.is_integer():
        raise ArgumentError(f"argument {name!r} must be an integer")
    return int(value)


class ToolApi:
    """Dispatcher bound to one episode's world state."""

    def __init__(self, state: WorldState):
        self.state = state
        self._next_call_id = 1
        self.call_log: list[dict] = []

    # -- dispatch ----------------------------------------------------------

    def dispatch(self, tool: str, arguments: dict | None = None) -> ToolResult:
        call = ToolCall(self._next_call_id, tool, dict(arguments or {}))
        self._next_call_id += 1
        phase_at_call = self.state.phase
        flags: list[dict] = []
        try:
            if tool not in ALL_TOOLS:
                raise UnknownToolError(f"unknown tool {tool!r}")
            self._check_phase(tool)
            if tool in ("place_order", "modify_sku_price"):
                flags = self.validate_action(tool, call.arguments)
            result = getattr(self, f"_tool_{tool}")(call.arguments)
            out = ToolResult(call.call_id, True, result=result, flags=flags)
        except SimError as exc:
            out = ToolResult(
                call.call_id, False,
                error={"code": exc.code, "message": exc.message},
                flags=flags,
            )
        entry = {
            "call_id": call.call_id,
            "phase": phase_at_call,
            "tool": tool,
            "arguments": call.arguments,
            "ok": out.ok,
        }
        if not out.ok:
            entry["error"] = out.error
        if out.flags:
            entry["flags"] = out.flags
        self.call_log.append(entry)
        return out

    def _check_phase(self, tool: str) -> None:
        phase = self.state.phase
        if tool in STRATEGY_TOOLS and phase != PHASE_STRATEGY:
            raise GateError(f"{tool} is only available in the strategy phase")
        if tool in EXECUTION_TOOLS and phase != PHASE_EXECUTION:
            raise GateError(f"{tool} is only available in the execution phase")

    # -- validation --------------------------------------------------------

    def validate_action(self, tool: str, arguments: dict) -> list[dict]:
        """Hard-reject impossible actions; flag anomalous but legal ones."""
        state = self.state
        flags: list[dict] = []
        sku_id = _require(arguments, "sku_id", str)
        if sku_id not in state.catalog.index:
            raise InvalidActionError(f"unknown sku {sku_id!r}")
        if tool == "modify_sku_price":
            price = _require(arguments, "new_price", (int, float))
            if not math.isfinite(price) or price <= 0:
                raise InvalidActionError("price must be positive")
            if price > PRICE_FLAG_THRESHOLD:
                flags.append({"kind": "price_out_of_range",
                              "detail": f"new_price {price} exceeds {PRICE_FLAG_THRESHOLD}"})
        else:  # place_order
            supplier_id = _require(arguments, "supplier_id", str)
            suppliers = state.suppliers.suppliers.get(sku_id, [])
            if supplier_id not in {s.supplier_id for s in suppliers}:
                raise InvalidActionError(
                    f"unknown supplier {supplier_id!r} for sku {sku_id!r}"
                )
            quantity = _int_arg(arguments, "quantity")
            if quantity <= 0:
                raise InvalidActionError("quantity must be positive")
            if quantity > state.config.inventory_capacity:
                raise InvalidActionError("quantity exceeds inventory capacity")
            if quantity > QUANTITY_FLAG_CAPACITY_SHARE * state.config.inventory_capacity:
                flags.append({"kind": "quantity_implausible",
                              "detail": f"quantity {quantity} exceeds 25% of capacity"})
        return flags

    # -- read tools --------------------------------------------------------

    def _tool_view_funds_and_date(self, arguments: dict):
        state = self.state
        return {
            "funds": state.finance.funds,
            "net_worth": finance_mod.net_worth(
                state.finance, state.inventory, state.catalog, state.day
            ),
            "day": state.day,
            "date": state.date_for_day(state.day),
        }

    def _tool_view_inventory(self, arguments: dict):
        state = self.state
        snap = state.inventory.snapshot(state.day)
        return {
            "capacity": state.inventory.capacity,
            "total_on_hand": state.inventory.total_onhand(),
            "skus": {
                sku_id: {
                    "on_hand": sum(q for _, q in snap["lots"].get(sku_id, [])),
                    "lots": snap["lots"].get(sku_id, []),
                    "pending": snap["pending"].get(sku_id, 0),
                    "price": state.prices[sku_id],
                    "shelf_life_days": state.catalog.sku(sku_id).shelf_life_days,
                }
                for sku_id in state.catalog.sku_ids
            },
        }

    def _resolve_day(self, value, name: str) -> int:
        if isinstance(value, str):
            try:
                return self.state.day_for_date(value)
            except ValueError as exc:
                raise ArgumentError(f"{name} must be a day index or ISO date") from exc
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ArgumentError(f"{name} must be a day index or ISO date")
        return int(value)

    def _known_sku(self, arguments: dict) -> str:
        sku_id = _require(arguments, "sku", str) if "sku" in arguments \
            else _require(arguments, "sku_id", str)
        if sku_id not in self.state.catalog.index:
            raise InvalidActionError(f"unknown sku {sku_id!r}")
        return sku_id

    def _tool_view_sku_sales_history(self, arguments: dict):
        state = self.state
        sku_id = self._known_sku(arguments)
        start_arg = arguments.get("start_day")
        end_arg = arguments.get("end_day")
        start = 1 if start_arg is None else self._resolve_day(start_arg, "start_day")
        end = state.day - 1 if end_arg is None else self._resolve_day(end_arg, "end_day")
        if start_arg is not None and end_arg is not None and start > end:
            raise ArgumentError("start_day must not exceed end_day")
        lo, hi = max(1, start), min(state.day - 1, end)
        return [
            {"day": d, "date": state.date_for_day(d), "units": units, "price": price}
            for d, units, price in state.sales_history[sku_id]
            if lo <= d <= hi
        ]

    def _tool_view_sku_avg_ratings(self, arguments: dict):
        state = self.state
        sku_id = self._known_sku(arguments)
        agg = state.review_book.aggregate(sku_id, state.day)
        return {
            "sku_id": sku_id,
            "count": agg.count,
            "mean_all": agg.mean_all,
            "mean_recent": agg.mean_recent,
        }

    def _tool_view_sku_recent_reviews(self, arguments: dict):
        state = self.state
        sku_id = self._known_sku(arguments)
        window = _int_arg(arguments, "window", required=False)
        if window is None:
            window = state.config.reviews.recent_window
        if window < 1:
            raise ArgumentError("window must be >= 1")
        return [
            {"day": r.day, "rating": r.rating}
            for r in state.review_book.recent_reviews(sku_id, state.day, window)
        ]

    def _tool_view_current_date_supplier_prices(self, arguments: dict):
        state = self.state
        sku_id = None
        if arguments.get("sku") is not None or arguments.get("sku_id") is not None:
            sku_id = self._known_sku(arguments)
        return state.suppliers.quote_prices(state.catalog, state.active_news, sku_id)

    def _tool_view_current_orders(self, arguments: dict):
        return [o.to_dict() for o in self.state.suppliers.pending_orders()]

    def _tool_view_today_news(self, arguments: dict):
        state = self.state
        if not state.config.news.enabled:
            raise DisabledError("news is disabled in this configuration")
        return [
            {"event_id": e.event_id, "text": e.text, "created_day": e.created_day}
            for e in state.active_news
        ]

    def _tool_memory_write(self, arguments: dict):
        key = _require(arguments, "key", str)
        text = _require(arguments, "text", str)
        self.state.memory[key] = text
        return {"stored": key}

    def _tool_memory_read(self, arguments: dict):
        key = arguments.get("key")
        if key is None:
            return dict(sorted(self.state.memory.items()))
        if not isinstance(key, str):
            raise ArgumentError("key must be a string")
        return {key: self.state.memory.get(key)}

    # -- strategy tools ----------------------------------------------------

    def _tool_set_macro_strategy(self, arguments: dict):
        value = _require(arguments, "macro_strategy", list)
        self.state.draft_strategy.macro_strategy = strategy_mod.validate_macro(value)
        return {"ok": True}

    def _tool_set_execute_strategy(self, arguments: dict):
        value = _require(arguments, "execute_strategy", dict)
        updates = strategy_mod.validate_execute(value, self.state.config.news.enabled)
        self.state.draft_strategy.execute_strategy.update(updates)
        return {"ok": True}

    def _tool_set_action(self, arguments: dict):
        value = _require(arguments, "action", list)
        self.state.draft_strategy.today_action = strategy_mod.validate_action_list(value)
        return {"ok": True}

    def _tool_finish_strategy_phase(self, arguments: dict):
        state = self.state
        state.strategy = state.draft_strategy.snapshot()
        state.phase = PHASE_EXECUTION
        return state.strategy.to_dict()

    # -- execution tools ---------------------------------------------------

    def _tool_place_order(self, arguments: dict):
        state = self.state
        sku_id = arguments["sku_id"]
        supplier_id = arguments["supplier_id"]
        quantity = _int_arg(arguments, "quantity")
        category = state.catalog.category_of(sku_id)
        unit_cost = state.suppliers.quote(sku_id, supplier_id, category, state.active_news)
        total = round2(quantity * unit_cost)
        finance_mod.debit_procurement(state.finance, total)  # raises before any order is recorded
        order = state.suppliers.place_order(
            sku_id, supplier_id, quantity, state.day, unit_cost, state.streams.leadtime
        )
        return order.to_dict()

    def _tool_modify_sku_price(self, arguments: dict):
        state = self.state
        sku_id = arguments["sku_id"]
        new_price = round2(float(arguments["new_price"]))
        old = state.prices[sku_id]
        state.prices[sku_id] = new_price
        return {"sku_id": sku_id, "old_price": old, "new_price": new_price}

    def _tool_end_today(self, arguments: dict):
        return engine_mod.end_of_day_transition(self.state)
