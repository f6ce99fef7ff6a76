"""Customer reviews and returns, rating aggregates, and the review utility shift.

Every sold unit independently yields a review with probability
``review_ratio``; the rating is a clamped rounded normal around 1 + 4q where
q is the quality of the supplier whose lot the unit came from.  Returns are
Bernoulli with probability ``return_base * (1 - q)`` per unit; returned
units refund the full sale price and are destroyed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RATING_SIGMA = 0.7


@dataclass
class Review:
    sku_id: str
    day: int
    rating: int
    source_quality: float


@dataclass
class RatingAggregate:
    sku_id: str
    count: int
    mean_all: float | None
    mean_recent: float | None


class ReviewBook:
    def __init__(self, recent_window: int = 14):
        self.recent_window = recent_window
        self._by_sku: dict[str, list[Review]] = {}

    def add(self, review: Review) -> None:
        self._by_sku.setdefault(review.sku_id, []).append(review)

    def aggregate(self, sku_id: str, day: int) -> RatingAggregate:
        reviews = self._by_sku.get(sku_id, [])
        if not reviews:
            return RatingAggregate(sku_id, 0, None, None)
        ratings = [r.rating for r in reviews]
        recent = [r.rating for r in reviews if r.day > day - self.recent_window]
        mean_all = sum(ratings) / len(ratings)
        mean_recent = sum(recent) / len(recent) if recent else mean_all
        return RatingAggregate(sku_id, len(ratings), mean_all, mean_recent)

    def recent_reviews(self, sku_id: str, day: int, window: int) -> list[Review]:
        return [r for r in self._by_sku.get(sku_id, [])
                if r.day > day - window]


def generate_reviews(sold_units: dict[str, list[tuple[int, float]]],
                     review_ratio: float, day: int,
                     rng: np.random.Generator) -> list[Review]:
    """Sample reviews for sold units, grouped as (quantity, quality) per SKU.

    Iteration follows the given dict order (catalog order) so the review
    stream consumption is reproducible.
    """
    out: list[Review] = []
    for sku_id, groups in sold_units.items():
        for qty, quality in groups:
            if qty == 0:
                continue
            hits = int(np.count_nonzero(rng.random(qty) < review_ratio))
            if hits == 0:
                continue
            raw = rng.normal(1.0 + 4.0 * quality, RATING_SIGMA, hits)
            ratings = np.clip(np.rint(raw), 1, 5).astype(int)
            out.extend(Review(sku_id, day, int(r), quality) for r in ratings)
    return out


def generate_returns(sold_units: dict[str, list[tuple[int, float]]],
                     return_base: float, rng: np.random.Generator) -> dict[str, int]:
    """Per-SKU returned unit counts; probability return_base * (1 - quality)."""
    out: dict[str, int] = {}
    for sku_id, groups in sold_units.items():
        total = 0
        for qty, quality in groups:
            if qty == 0:
                continue
            p = return_base * (1.0 - quality)
            if p <= 0.0:
                # Still consume the draws so outcomes do not shift the stream.
                rng.random(qty)
                continue
            total += int(np.count_nonzero(rng.random(qty) < p))
        if total:
            out[sku_id] = total
    return out


def review_delta(aggregate: RatingAggregate, weight: float) -> float:
    """Utility shift in [-weight, +weight], recency-weighted around a 3-star center."""
    if aggregate.count == 0:
        return 0.0
    blend = 0.7 * aggregate.mean_recent + 0.3 * aggregate.mean_all
    return weight * (blend - 3.0) / 2.0
