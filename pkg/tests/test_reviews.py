import numpy as np
import pytest

from retailsim.reviews import (
    RatingAggregate,
    Review,
    ReviewBook,
    generate_returns,
    generate_reviews,
    review_delta,
)


def test_review_rate_matches_ratio():
    rng = np.random.default_rng(0)
    sold = {"a": [(100_000, 0.6)]}
    reviews = generate_reviews(sold, 0.02, day=1, rng=rng)
    assert 0.017 <= len(reviews) / 100_000 <= 0.023
    for r in reviews:
        assert 1 <= r.rating <= 5


def test_high_quality_rates_higher():
    rng = np.random.default_rng(0)
    hi = generate_reviews({"a": [(50_000, 1.0)]}, 0.1, 1, rng)
    lo = generate_reviews({"a": [(50_000, 0.2)]}, 0.1, 1, rng)
    mean_hi = np.mean([r.rating for r in hi])
    mean_lo = np.mean([r.rating for r in lo])
    assert mean_hi > 4.5
    assert mean_lo < 2.5


def test_returns_scale_with_quality():
    rng = np.random.default_rng(0)
    returns_lo = generate_returns({"a": [(50_000, 0.2)]}, 0.1, rng)
    returns_hi = generate_returns({"a": [(50_000, 1.0)]}, 0.1, rng)
    # p = 0.1 * (1 - q): 0.08 for q=0.2, 0 for q=1.0
    assert abs(returns_lo["a"] / 50_000 - 0.08) < 0.01
    assert returns_hi == {}


def test_perfect_quality_still_consumes_stream():
    a = np.random.default_rng(7)
    b = np.random.default_rng(7)
    generate_returns({"a": [(100, 1.0)]}, 0.1, a)
    generate_returns({"a": [(100, 0.5)]}, 0.1, b)
    # both consumed exactly 100 draws
    assert a.random() == b.random()


def test_aggregate_recent_window_and_fallback():
    book = ReviewBook(recent_window=14)
    book.add(Review("a", day=1, rating=5, source_quality=1.0))
    book.add(Review("a", day=20, rating=1, source_quality=0.2))
    agg = book.aggregate("a", day=30)
    assert agg.count == 2
    assert agg.mean_all == 3.0
    assert agg.mean_recent == 1.0  # only the day-20 review is within 14 days
    # window empty: mean_recent falls back to mean_all
    agg_late = book.aggregate("a", day=100)
    assert agg_late.mean_recent == agg_late.mean_all == 3.0
    empty = book.aggregate("zzz", day=5)
    assert empty.count == 0 and empty.mean_all is None


def test_review_delta_bounds_and_direction():
    assert review_delta(RatingAggregate("a", 0, None, None), 0.5) == 0.0
    five = RatingAggregate("a", 10, 5.0, 5.0)
    one = RatingAggregate("a", 10, 1.0, 1.0)
    assert review_delta(five, 0.5) == pytest.approx(0.5)
    assert review_delta(one, 0.5) == pytest.approx(-0.5)
    mixed = RatingAggregate("a", 10, 3.0, 4.0)  # recency-weighted above center
    assert review_delta(mixed, 0.5) == pytest.approx(0.5 * (0.7 * 4.0 + 0.3 * 3.0 - 3.0) / 2.0)
