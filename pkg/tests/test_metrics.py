import pytest
from hypothesis import given
from hypothesis import strategies as st

from retailsim.errors import ArgumentError
from retailsim.metrics import (
    EpisodeMetrics,
    aggregate_rollouts,
    compute_episode_metrics,
    execution_similarity,
    fallback_macro_judge,
    instability,
    macro_similarity,
)


def _exec(**overrides):
    base = {f: [] for f in ("focus_skus", "sku_supplier_mapping", "news_to_monitor",
                            "skus_to_reorder", "price_adjustments", "sku_to_monitor",
                            "other")}
    base.update(overrides)
    return base


def test_execution_similarity_fixture():
    # [DERIVED] one field at J({A,B},{B,C}) = 1/3, three at J(0,0) = 1:
    # mean = (1/3 + 3) / 4 = 0.8333...
    a = _exec(focus_skus=["A", "B"])
    b = _exec(focus_skus=["B", "C"])
    assert execution_similarity(a, b) == pytest.approx(0.83333, abs=1e-4)


def test_execution_similarity_identical_and_disjoint():
    a = _exec(focus_skus=["A"], sku_to_monitor=["A"])
    assert execution_similarity(a, a) == 1.0
    b = _exec(focus_skus=["B"], sku_to_monitor=["B"])
    assert execution_similarity(a, b) == 0.5  # two fields at 0, two empty at 1


def test_execution_similarity_canonicalizes_mappings():
    a = _exec(sku_supplier_mapping=[{"sku_id": "1", "supplier_id": "s"}])
    b = _exec(sku_supplier_mapping=[{"supplier_id": "s", "sku_id": "1"}])
    assert execution_similarity(a, b) == 1.0


@given(st.lists(st.sampled_from("abcde"), max_size=5),
       st.lists(st.sampled_from("abcde"), max_size=5))
def test_execution_similarity_symmetric_and_bounded(xs, ys):
    a, b = _exec(focus_skus=xs), _exec(focus_skus=ys)
    s = execution_similarity(a, b)
    assert 0.0 <= s <= 1.0
    assert s == execution_similarity(b, a)


def test_instability_fixture():
    # [DERIVED] diffs of [0.8, 0.6, 0.9] are [-0.2, 0.3]:
    # population std 0.25, mean |diff| 0.25, sum |diff| 0.5
    stats = instability([0.8, 0.6, 0.9])
    assert stats.std_diff == pytest.approx(0.25, abs=1e-12)
    assert stats.mac == pytest.approx(0.25, abs=1e-12)
    assert stats.tv == pytest.approx(0.5, abs=1e-12)


def test_instability_constant_series_is_zero():
    stats = instability([0.7, 0.7, 0.7, 0.7])
    assert stats.std_diff == stats.mac == stats.tv == 0.0


def test_instability_needs_two_points():
    with pytest.raises(ArgumentError):
        instability([1.0])


@given(st.lists(st.floats(min_value=-100, max_value=100), min_size=2, max_size=20),
       st.floats(min_value=-50, max_value=50))
def test_instability_translation_invariant(series, shift):
    a = instability(series)
    b = instability([x + shift for x in series])
    assert a.std_diff == pytest.approx(b.std_diff, abs=1e-9)
    assert a.tv == pytest.approx(b.tv, abs=1e-9)


def test_macro_judge_fixtures():
    assert fallback_macro_judge([], []) == 1.0
    assert fallback_macro_judge(["keep stock"], []) == 0.0
    assert fallback_macro_judge(["keep stock high"], ["keep stock high"]) == 1.0
    partial = fallback_macro_judge(["keep stock high"], ["keep prices high"])
    assert 0.0 < partial < 1.0


def test_macro_similarity_clamps_bad_judges():
    assert macro_similarity(["a"], ["b"], judge=lambda a, b: 7.0) == 1.0
    assert macro_similarity(["a"], ["b"], judge=lambda a, b: -3.0) == 0.0
    assert macro_similarity(["a"], ["b"], judge=lambda a, b: 0.4) == 0.4


def _record(sold, revenue, refunds=0.0, returned=None, expired=None, arrivals=None):
    return {"day_report": {
        "sold": sold, "returned": returned or {}, "expired": expired or {},
        "arrivals": arrivals or [], "revenue": revenue, "refunds": refunds,
    }}


def test_compute_episode_metrics():
    records = [
        _record({"a": 10}, 50.0, refunds=5.0, returned={"a": 1},
                arrivals=[{"quantity": 20}]),
        _record({"a": 30}, 150.0, expired={"a": 4}),
    ]
    m = compute_episode_metrics(records)
    assert m.days == 2
    assert m.avg_daily_sales == 20.0
    assert m.avg_daily_income == pytest.approx(97.5)
    assert m.expiry_ratio == pytest.approx(4 / 20)
    assert m.return_ratio == pytest.approx(1 / 40)


def test_metrics_guard_zero_denominators():
    m = compute_episode_metrics([_record({}, 0.0)])
    assert m.expiry_ratio == 0.0 and m.return_ratio == 0.0
    with pytest.raises(ArgumentError):
        compute_episode_metrics([])


def test_aggregate_rollouts():
    eps = [EpisodeMetrics(10, 5.0, 100.0, 0.1, 0.0),
           EpisodeMetrics(20, 15.0, 300.0, 0.3, 0.2)]
    agg = aggregate_rollouts(eps)
    assert agg["rollouts"] == 2
    assert agg["days_mean"] == 15.0
    assert agg["max_days"] == 20
    assert agg["avg_daily_sales"] == 10.0
    with pytest.raises(ArgumentError):
        aggregate_rollouts([])
