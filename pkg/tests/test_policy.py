import pytest

from retailsim.config import preset
from retailsim.errors import ArgumentError
from retailsim.policy import (
    Agent,
    PHASE_CALL_BUDGET,
    PhaseSession,
    heuristic_policy,
    null_agent,
    run_episode,
    scripted_agent,
)


def test_null_agent_runs_auto_closed_days(short_config):
    state, records, days = run_episode(null_agent, short_config)
    assert days == 5
    for record in records:
        tools = [c["tool"] for c in record["tool_calls"]]
        assert tools == ["finish_strategy_phase", "end_today"]
        assert "violations" not in record


def test_scripted_agent_replays_calls(short_config):
    sku_probe = {}

    def factory(state):
        sku_probe["sku"] = state.catalog.sku_ids[0]
        return scripted_agent([
            {"strategy": [
                {"tool": "set_macro_strategy", "arguments": {"macro_strategy": ["m"]}},
                {"tool": "finish_strategy_phase", "arguments": {}},
            ],
             "execution": [
                {"tool": "modify_sku_price",
                 "arguments": {"sku_id": state.catalog.sku_ids[0], "new_price": 4.0}},
                {"tool": "end_today", "arguments": {}},
            ]},
        ])(state)

    state, records, days = run_episode(factory, short_config)
    assert days == 5
    assert records[0]["strategy"]["macro_strategy"] == ["m"]
    assert state.prices[sku_probe["sku"]] == 4.0
    # scripted day 1 closed both phases itself; later days were auto-closed
    assert [c["tool"] for c in records[1]["tool_calls"]] == \
        ["finish_strategy_phase", "end_today"]


def test_budget_violation_recorded_not_fatal(short_config):
    class Greedy(Agent):
        def strategy_phase(self, session):
            for _ in range(PHASE_CALL_BUDGET + 10):
                session.call("view_funds_and_date")

    state, records, days = run_episode(lambda s: Greedy(), short_config)
    assert days == 5
    assert any("budget" in v for v in records[0]["violations"])


def test_agent_errors_recorded_as_violations(short_config):
    class Raiser(Agent):
        def execution_phase(self, strategy, session):
            from retailsim.errors import ArgumentError
            raise ArgumentError("boom")

    state, records, days = run_episode(lambda s: Raiser(), short_config)
    assert days == 5
    assert records[0]["violations"] == ["execution:bad_arguments:boom"]


def test_run_episode_rejects_bad_limit(short_config):
    with pytest.raises(ArgumentError):
        run_episode(null_agent, short_config, max_days=0)


def test_run_episode_deterministic(short_config):
    _, a, _ = run_episode(heuristic_policy, short_config)
    _, b, _ = run_episode(heuristic_policy, short_config)
    assert a == b


def test_heuristic_emits_no_rejected_calls(easy_config):
    easy_config.max_days = 30
    _, records, days = run_episode(heuristic_policy, easy_config)
    assert days == 30
    for record in records:
        assert "violations" not in record
        for call in record["tool_calls"]:
            assert call["ok"], call


def test_heuristic_strategy_matches_actions(easy_config):
    easy_config.max_days = 3
    _, records, _ = run_episode(heuristic_policy, easy_config)
    for record in records:
        strat = record["strategy"]
        planned_orders = [a for a in strat["today_action"] if a["tool"] == "place_order"]
        assert [o["arguments"]["sku_id"] for o in planned_orders] == \
            strat["execute_strategy"]["skus_to_reorder"]
        mapping = strat["execute_strategy"]["sku_supplier_mapping"]
        assert [(m["sku_id"], m["supplier_id"]) for m in mapping] == \
            [(o["arguments"]["sku_id"], o["arguments"]["supplier_id"])
             for o in planned_orders]
        # executed calls mirror the locked plan exactly
        executed = [
            {"tool": c["tool"], "arguments": c["arguments"]}
            for c in record["tool_calls"]
            if c["phase"] == "execution" and c["tool"] != "end_today"
        ]
        assert executed == strat["today_action"]


def test_heuristic_picks_max_quality_suppliers(easy_config):
    easy_config.max_days = 2
    state, records, _ = run_episode(heuristic_policy, easy_config)
    for order in state.suppliers.orders:
        quality = state.suppliers._by_id[order.supplier_id].quality
        assert quality == 1.0


def test_heuristic_prices_set_once_on_day_one(easy_config):
    easy_config.max_days = 10
    _, records, _ = run_episode(heuristic_policy, easy_config)
    day1_prices = [a for a in records[0]["strategy"]["today_action"]
                   if a["tool"] == "modify_sku_price"]
    assert len(day1_prices) == 25
    for record in records[1:]:
        assert all(a["tool"] != "modify_sku_price"
                   for a in record["strategy"]["today_action"])


def test_termination_mid_episode():
    cfg = preset("easy")
    cfg.initial_funds = 1_000.0  # 4 paid rents, then 5 unpaid: 9 days
    state, records, days = run_episode(null_agent, cfg)
    assert days == 9
    assert state.terminated and state.termination_reason == "unpaid_rent"
    assert records[-1]["day_report"]["terminated"] is True
