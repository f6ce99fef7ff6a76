"""Daily traffic, utilities, multinomial-logit choice, and demand realization.

The idiosyncratic utility shock is never sampled: it is absorbed into the
closed-form logit choice probabilities.  The within-category substitution
term is evaluated in a single forward pass using base utilities (raw +
review + news deltas) inside the exponent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TrafficConfig
from .errors import ValidationError


@dataclass
class UtilityVector:
    raw: np.ndarray
    delta_reviews: np.ndarray
    delta_news: np.ndarray
    substitution: np.ndarray
    augmented: np.ndarray


@dataclass
class DemandOutcome:
    traffic: int
    probabilities: np.ndarray
    potential: np.ndarray   # int units demanded per SKU
    sold: np.ndarray        # int units sold per SKU (capped by on-hand)
    stockout: np.ndarray    # bool per SKU


def sample_traffic(day: int, config: TrafficConfig, rng: np.random.Generator) -> int:
    """Poisson daily traffic with a weekly multiplier pattern (day 1 -> index 0)."""
    factor = config.weekday_factors[(day - 1) % 7]
    return int(rng.poisson(config.base * factor))


def compute_utilities(prices: np.ndarray, delta_reviews: np.ndarray,
                      delta_news: np.ndarray, alpha: np.ndarray, beta: np.ndarray,
                      gamma: np.ndarray, category_effect: np.ndarray) -> UtilityVector:
    prices = np.asarray(prices, dtype=float)
    if np.any(prices <= 0):
        raise ValidationError("all prices must be positive")
    raw = alpha + beta * prices + category_effect
    base = raw + delta_reviews + delta_news
    substitution = gamma @ np.exp(base)
    augmented = base + substitution
    return UtilityVector(
        raw=raw,
        delta_reviews=np.asarray(delta_reviews, dtype=float),
        delta_news=np.asarray(delta_news, dtype=float),
        substitution=substitution,
        augmented=augmented,
    )


def choice_probabilities(utilities: np.ndarray) -> np.ndarray:
    """MNL purchase probabilities with the outside option normalized to zero.

    Exponents are shifted by max(0, max utility) for numerical stability;
    the shift is exactly zero whenever all utilities are nonpositive, so the
    textbook form is reproduced bit-for-bit in the common case.
    """
    u = np.asarray(utilities, dtype=float)
    shift = max(0.0, float(np.max(u))) if u.size else 0.0
    e = np.exp(u - shift)
    denom = np.exp(-shift) + float(np.sum(e))
    return e / denom


def outside_probability(utilities: np.ndarray) -> float:
    u = np.asarray(utilities, dtype=float)
    shift = max(0.0, float(np.max(u))) if u.size else 0.0
    denom = np.exp(-shift) + float(np.sum(np.exp(u - shift)))
    return float(np.exp(-shift) / denom)


def realize_demand(traffic: int, probabilities: np.ndarray,
                   onhand_sellable: np.ndarray, rng: np.random.Generator) -> DemandOutcome:
    """Binomial potential demand per SKU, capped by sellable on-hand stock.

    Draws are taken one per SKU in catalog order, so the demand stream always
    advances by exactly |catalog| draws per day regardless of outcomes.
    """
    probs = np.asarray(probabilities, dtype=float)
    onhand = np.asarray(onhand_sellable, dtype=int)
    potential = np.array([int(rng.binomial(traffic, p)) for p in probs], dtype=int)
    sold = np.minimum(potential, onhand)
    stockout = potential > onhand
    return DemandOutcome(
        traffic=int(traffic),
        probabilities=probs,
        potential=potential,
        sold=sold,
        stockout=stockout,
    )
