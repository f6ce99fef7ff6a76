"""World state, the five-step end-of-day transition, and the episode loop core.

The trajectory of an episode is a pure function of (config, master seed,
agent action sequence): all randomness flows through named substreams and
every iteration over SKUs follows catalog order.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json

import numpy as np

from . import demand, finance, news, reviews
from .catalog import Catalog, calibrate_alpha, generate_synthetic_catalog, load_catalog
from .config import EpisodeConfig
from .errors import ConfigError, GateError
from .inventory import ArrivalBatch, InventoryLedger
from .money import round2
from .reviews import ReviewBook
from .rng import RngStreams, stream_seed
from .strategy import StrategyRecord
from .supply import SupplierBook

PHASE_STRATEGY = "strategy"
PHASE_EXECUTION = "execution"


class WorldState:
    def __init__(self, config: EpisodeConfig, master_seed: int):
        self.config = config
        self.master_seed = master_seed
        self.streams = RngStreams(
            master_seed, news_seed=config.news.seed if config.news.enabled else None
        )

        if config.catalog_path:
            catalog = load_catalog(config.catalog_path, config.catalog)
        else:
            catalog = generate_synthetic_catalog(
                config.catalog, stream_seed(master_seed, "catalog")
            )
        self.suppliers = SupplierBook.generate(
            catalog, stream_seed(master_seed, "suppliers")
        )
        catalog = catalog.with_reference_costs(self.suppliers.reference_costs())
        catalog = calibrate_alpha(catalog, config.target_daily_sales, config.traffic.base)
        self.catalog: Catalog = catalog

        self.day = 1
        self.phase = PHASE_STRATEGY
        self.prices: dict[str, float] = {s.sku_id: s.base_price for s in catalog.skus}
        self.inventory = InventoryLedger(config.inventory_capacity)
        self.finance = finance.FinancialState(funds=round2(config.initial_funds))
        self.review_book = ReviewBook(config.reviews.recent_window)
        self.active_news: list[news.NewsEvent] = []
        self.news_counter = 1
        self.sales_history: dict[str, list[tuple[int, int, float]]] = {
            sku_id: [] for sku_id in catalog.sku_ids
        }
        self.memory: dict[str, str] = {}
        self.strategy = StrategyRecord(day=0)
        self.draft_strategy = self.strategy.inherit(day=1)
        self.last_report: dict | None = None
        self.terminated = False
        self.termination_reason: str | None = None

        # episode tallies for metrics
        self.total_sold = 0
        self.total_returned = 0
        self.total_delivered = 0

        if config.news.enabled:
            self._generate_news(day=1)

    # -- helpers -----------------------------------------------------------

    def _generate_news(self, day: int) -> None:
        events = news.generate_daily_news(
            day, self.config.news, self.catalog.sku_ids, self.catalog.categories,
            self.streams.news, start_id=self.news_counter,
        )
        self.news_counter += len(events)
        self.active_news.extend(events)

    def date_for_day(self, day: int) -> str:
        epoch = _dt.date.fromisoformat(self.config.epoch_date)
        return (epoch + _dt.timedelta(days=day - 1)).isoformat()

    def day_for_date(self, date_str: str) -> int:
        epoch = _dt.date.fromisoformat(self.config.epoch_date)
        return (_dt.date.fromisoformat(date_str) - epoch).days + 1

    def demand_inputs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(prices, review deltas, news deltas) arrays in catalog order."""
        catalog = self.catalog
        prices = np.array([self.prices[s] for s in catalog.sku_ids])
        delta_reviews = np.array([
            reviews.review_delta(
                self.review_book.aggregate(s, self.day), self.config.reviews.weight
            )
            for s in catalog.sku_ids
        ])
        delta_news = np.array([
            news.demand_delta(s, catalog.category_of(s), self.active_news)
            for s in catalog.sku_ids
        ])
        return prices, delta_reviews, delta_news

    def choice_probabilities(self) -> np.ndarray:
        prices, d_rev, d_news = self.demand_inputs()
        params = self.catalog.demand_params
        u = demand.compute_utilities(
            prices, d_rev, d_news, params.alpha, params.beta, params.gamma,
            self.catalog.category_effects(),
        )
        return demand.choice_probabilities(u.augmented)

    def snapshot(self) -> dict:
        """Deterministic full-state snapshot used for hashing and debugging."""
        return {
            "day": self.day,
            "phase": self.phase,
            "prices": {k: self.prices[k] for k in self.catalog.sku_ids},
            "funds": self.finance.funds,
            "unpaid_streak": self.finance.consecutive_unpaid_rent_days,
            "inventory": self.inventory.snapshot(self.day),
            "orders": [o.to_dict() for o in self.suppliers.orders],
            "news": [e.to_dict() for e in self.active_news],
            "memory": dict(sorted(self.memory.items())),
            "strategy": self.strategy.to_dict(),
            "draft": self.draft_strategy.to_dict(),
        }

    def state_hash(self) -> str:
        payload = json.dumps(self.snapshot(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


def init_episode(config: EpisodeConfig, master_seed: int | None = None) -> WorldState:
    config.validate()
    seed = config.seed if master_seed is None else master_seed
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    return WorldState(config, seed)


def end_of_day_transition(state: WorldState) -> dict:
    """Run the five-step day transition and advance to the next day's strategy phase."""
    if state.phase != PHASE_EXECUTION:
        raise GateError("end-of-day transition requires the execution phase")

    config = state.config
    catalog = state.catalog
    day = state.day
    sku_ids = catalog.sku_ids

    # 1. customer traffic
    traffic = demand.sample_traffic(day, config.traffic, state.streams.traffic)

    # 2. sales realization at current prices
    probs = state.choice_probabilities()
    onhand = np.array([state.inventory.onhand(s) for s in sku_ids])
    outcome = demand.realize_demand(traffic, probs, onhand, state.streams.demand)
    sold = {s: int(q) for s, q in zip(sku_ids, outcome.sold)}
    breakdown = state.inventory.consume_sales(sold, day)
    revenue = 0.0
    for sku_id in sku_ids:
        if sold[sku_id]:
            revenue = round2(revenue + round2(sold[sku_id] * state.prices[sku_id]))

    # 3. reviews and returns conditional on sales and source quality
    sold_units: dict[str, list[tuple[int, float]]] = {}
    for sku_id in sku_ids:
        groups = breakdown.get(sku_id, [])
        if groups:
            sold_units[sku_id] = [
                (qty, state.suppliers.quality_of_order(order_id))
                for qty, _cost, order_id in groups
            ]
    day_reviews = reviews.generate_reviews(
        sold_units, config.reviews.review_ratio, day, state.streams.reviews
    )
    for review in day_reviews:
        state.review_book.add(review)
    returns = reviews.generate_returns(
        sold_units, config.reviews.return_base, state.streams.reviews
    )
    refunds = 0.0
    for sku_id, qty in returns.items():
        refunds = round2(refunds + round2(qty * state.prices[sku_id]))

    # 4. inventory update: expire, then arrivals, then pending release
    expired = state.inventory.expire_units(day)
    delivered = state.suppliers.deliveries_due(day)
    batches = [
        ArrivalBatch(o.order_id, o.sku_id, o.quantity, o.unit_cost_paid,
                     catalog.sku(o.sku_id).shelf_life_days)
        for o in delivered
    ]
    placed, queued = state.inventory.add_arrivals(batches, day)
    released = state.inventory.release_pending(day)

    # 5. financial settlement, news decay, next-day news
    rent_outcome = finance.settle_day(state.finance, revenue, refunds, config.daily_rent)
    state.active_news = news.tick_ttl(state.active_news)
    if config.news.enabled:
        state._generate_news(day + 1)

    for sku_id in sku_ids:
        state.sales_history[sku_id].append((day, sold[sku_id], state.prices[sku_id]))

    state.total_sold += int(outcome.sold.sum())
    state.total_returned += sum(returns.values())
    state.total_delivered += sum(o.quantity for o in delivered)

    if finance.check_termination(state.finance):
        state.terminated = True
        state.termination_reason = "unpaid_rent"

    net = finance.net_worth(state.finance, state.inventory, catalog, day + 1)
    report = {
        "day": day,
        "traffic": traffic,
        "sold": {s: q for s, q in sold.items() if q},
        "returned": returns,
        "expired": expired,
        "stockout": sorted(s for s, flag in zip(sku_ids, outcome.stockout) if flag),
        "revenue": revenue,
        "refunds": refunds,
        "rent_result": {
            "paid": rent_outcome.paid,
            "rent_due": rent_outcome.rent_due,
            "unpaid_streak": rent_outcome.unpaid_streak,
        },
        "arrivals": [
            {"order_id": o.order_id, "sku_id": o.sku_id, "quantity": o.quantity,
             "unit_cost": o.unit_cost_paid}
            for o in delivered
        ],
        "placed": placed,
        "released": released,
        "queued": queued,
        "onhand_end": {
            s: state.inventory.onhand(s) for s in sku_ids if state.inventory.onhand(s)
        },
        "pending_end": state.inventory.pending_units(),
        "funds_end": state.finance.funds,
        "net_worth_end": net,
        "terminated": state.terminated,
    }

    state.last_report = report
    state.day = day + 1
    state.phase = PHASE_STRATEGY
    state.draft_strategy = state.strategy.inherit(day=state.day)
    return report
