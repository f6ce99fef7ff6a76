"""Agents and the two-phase day loop.

A day is driven strategy-phase-first: the agent may read state and edit the
draft strategy, then the record is frozen and the execution phase runs with
the snapshot as reference.  Unset strategy parts inherit yesterday's values.
Agents that fail to close a phase themselves are force-closed by the
harness (auto finish_strategy_phase / end_today), and per-phase call budgets
guard against non-terminating agents.
"""

from __future__ import annotations

import math

import numpy as np

from .engine import PHASE_EXECUTION, PHASE_STRATEGY, WorldState, init_episode
from .errors import ArgumentError, SimError
from .money import round2
from .toolapi import ToolApi, ToolResult

PHASE_CALL_BUDGET = 200


class PhaseBudgetExceeded(Exception):
    pass


class PhaseSession:
    """Per-phase tool facade with a call budget."""

    def __init__(self, api: ToolApi, budget: int = PHASE_CALL_BUDGET):
        self.api = api
        self.budget = budget
        self.calls = 0

    def call(self, tool: str, arguments: dict | None = None) -> ToolResult:
        if self.calls >= self.budget:
            raise PhaseBudgetExceeded(f"per-phase budget of {self.budget} calls exceeded")
        self.calls += 1
        return self.api.dispatch(tool, arguments)

    @property
    def phase(self) -> str:
        return self.api.state.phase


class Agent:
    """Behavioral interface: each phase issues tool calls through the session."""

    def strategy_phase(self, session: PhaseSession) -> None:
        pass

    def execution_phase(self, strategy: dict, session: PhaseSession) -> None:
        pass


class NullAgent(Agent):
    """Ends every phase immediately without acting."""


class ScriptedAgent(Agent):
    """Replays a fixed per-day call list; used for tests and replay.

    ``script`` is a list of day entries ``{"strategy": [...], "execution":
    [...]}`` where each item is ``{"tool": ..., "arguments": {...}}``.  Days
    beyond the script end every phase immediately.
    """

    def __init__(self, script: list[dict]):
        self.script = list(script)
        self._day_index = 0

    def _calls(self, phase: str) -> list[dict]:
        if self._day_index >= len(self.script):
            return []
        return self.script[self._day_index].get(phase, [])

    def strategy_phase(self, session: PhaseSession) -> None:
        for call in self._calls("strategy"):
            session.call(call["tool"], call.get("arguments", {}))

    def execution_phase(self, strategy: dict, session: PhaseSession) -> None:
        for call in self._calls("execution"):
            session.call(call["tool"], call.get("arguments", {}))
        self._day_index += 1


class HeuristicAgent(Agent):
    """Privileged base-stock baseline with full access to internal state.

    Expected demand per SKU comes from the true choice probabilities at
    current prices; the order-up-to target covers the maximal lead time plus
    a review period, capped by the SKU's shelf life.  Suppliers are scored
    by quality minus a cost penalty; a cash reserve of a few days' rent is
    never spent on stock.
    """

    MACRO = [
        "Keep every product in stock for the coming week of demand.",
        "Buy from high-quality suppliers to avoid returns and bad reviews.",
        "Price at a fixed markup over reference cost and hold prices steady.",
        "Never spend the cash reserve needed for upcoming rent.",
    ]

    def __init__(self, state: WorldState, markup: float = 1.8, cover_days: int = 10,
                 quality_lambda: float = 0.5, reserve_days: int = 7,
                 price_floor: float = 0.5, price_cap: float = 45.0):
        self.state = state
        self.markup = markup
        self.cover_days = cover_days
        self.quality_lambda = quality_lambda
        self.reserve_days = reserve_days
        self.price_floor = price_floor
        self.price_cap = price_cap
        self._planned_orders: list[dict] = []
        self._planned_prices: list[dict] = []

    def _target_price(self, sku_id: str) -> float:
        ref = self.state.catalog.sku(sku_id).reference_cost
        return round2(min(self.price_cap, max(self.price_floor, ref * self.markup)))

    def _plan(self) -> None:
        state = self.state
        catalog = state.catalog
        cfg = state.config

        self._planned_prices = []
        if state.day == 1:
            self._planned_prices = [
                {"sku_id": sku_id, "new_price": self._target_price(sku_id)}
                for sku_id in catalog.sku_ids
            ]

        traffic_mean = cfg.traffic.base * (sum(cfg.traffic.weekday_factors) / 7.0)
        probs = state.choice_probabilities()

        on_order: dict[str, int] = {}
        for order in state.suppliers.pending_orders():
            on_order[order.sku_id] = on_order.get(order.sku_id, 0) + order.quantity

        budget = state.finance.funds - self.reserve_days * cfg.daily_rent
        headroom = (cfg.inventory_capacity
                    - state.inventory.total_onhand()
                    - state.inventory.pending_units()
                    - sum(on_order.values()))
        quotes = state.suppliers.quote_prices(catalog, state.active_news)

        self._planned_orders = []
        for sku_id, p_star in zip(catalog.sku_ids, probs):
            spec = catalog.sku(sku_id)
            demand_rate = traffic_mean * float(p_star)
            target = demand_rate * min(self.cover_days, spec.shelf_life_days)
            position = (state.inventory.onhand(sku_id)
                        + state.inventory.pending_units(sku_id)
                        + on_order.get(sku_id, 0))
            shortfall = target - position
            if shortfall < 1.0:
                continue
            best = max(
                quotes[sku_id],
                key=lambda q: q["quality"] - self.quality_lambda * q["price"] / spec.base_price,
            )
            qty = math.ceil(shortfall)
            qty = min(qty, headroom, cfg.inventory_capacity)
            if best["price"] > 0:
                qty = min(qty, int(budget // best["price"]))
            if qty < 1:
                continue
            cost = round2(qty * best["price"])
            budget -= cost
            headroom -= qty
            self._planned_orders.append({
                "sku_id": sku_id,
                "supplier_id": best["supplier_id"],
                "quantity": qty,
            })

    def strategy_phase(self, session: PhaseSession) -> None:
        self._plan()
        reorder = [o["sku_id"] for o in self._planned_orders]
        session.call("set_macro_strategy", {"macro_strategy": list(self.MACRO)})
        session.call("set_execute_strategy", {"execute_strategy": {
            "focus_skus": reorder[:10],
            "sku_supplier_mapping": [
                {"sku_id": o["sku_id"], "supplier_id": o["supplier_id"]}
                for o in self._planned_orders
            ],
            "news_to_monitor": [],
            "skus_to_reorder": reorder,
            "price_adjustments": [
                {"sku_id": p["sku_id"], "adjustment": f"set to {p['new_price']}"}
                for p in self._planned_prices
            ],
            "sku_to_monitor": [],
            "other": [],
        }})
        session.call("set_action", {"action": [
            *[{"tool": "modify_sku_price", "arguments": dict(p)}
              for p in self._planned_prices],
            *[{"tool": "place_order", "arguments": dict(o)}
              for o in self._planned_orders],
        ]})
        session.call("finish_strategy_phase")

    def execution_phase(self, strategy: dict, session: PhaseSession) -> None:
        for action in strategy["today_action"]:
            session.call(action["tool"], action["arguments"])
        session.call("end_today")


def run_day(agent: Agent, state: WorldState, api: ToolApi) -> dict:
    """Drive one full day; returns the trajectory record for that day."""
    assert state.phase == PHASE_STRATEGY
    day = state.day
    log_start = len(api.call_log)
    violations: list[str] = []

    session = PhaseSession(api)
    try:
        agent.strategy_phase(session)
    except PhaseBudgetExceeded as exc:
        violations.append(f"strategy:{exc}")
    except SimError as exc:
        violations.append(f"strategy:{exc.code}:{exc.message}")
    if state.phase == PHASE_STRATEGY:
        api.dispatch("finish_strategy_phase")

    snapshot = state.strategy.to_dict()
    session = PhaseSession(api)
    try:
        agent.execution_phase(snapshot, session)
    except PhaseBudgetExceeded as exc:
        violations.append(f"execution:{exc}")
    except SimError as exc:
        violations.append(f"execution:{exc.code}:{exc.message}")
    if state.phase == PHASE_EXECUTION:
        api.dispatch("end_today")
    report = state.last_report

    record = {
        "day": day,
        "date": state.date_for_day(day),
        "strategy": snapshot,
        "tool_calls": api.call_log[log_start:],
        "day_report": report,
    }
    if violations:
        record["violations"] = violations
    return record


def run_episode(agent_factory, config, seed: int | None = None,
                max_days: int | None = None, on_record=None):
    """Run a full episode; returns (state, records, completed_days).

    ``agent_factory`` is called with the initialized world state and must
    return an Agent.  ``on_record`` receives each day's trajectory record as
    it is produced.
    """
    limit = config.max_days if max_days is None else max_days
    if limit < 1:
        raise ArgumentError("max_days must be >= 1")
    state = init_episode(config, seed)
    agent = agent_factory(state)
    api = ToolApi(state)
    records = []
    while not state.terminated and state.day <= limit:
        record = run_day(agent, state, api)
        records.append(record)
        if on_record is not None:
            on_record(record)
    days = state.day - 1
    return state, records, days


def null_agent(state: WorldState) -> Agent:
    return NullAgent()


def heuristic_policy(state: WorldState, **params) -> Agent:
    return HeuristicAgent(state, **params)


def scripted_agent(script: list[dict]):
    def factory(state: WorldState) -> Agent:
        return ScriptedAgent(script)
    return factory
