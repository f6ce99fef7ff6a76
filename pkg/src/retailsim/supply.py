"""Suppliers, price quotes, and the purchase-order lifecycle.

Each SKU gets five suppliers on a positively ordered cost/quality ladder:
the cheapest supplier is also the lowest quality, exactly one supplier has
the maximal quality, and the middle three sit strictly between.  Lead time
is sampled uniformly from the supplier's range when an order is placed;
payment is debited at placement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import news
from .catalog import Catalog
from .errors import UnknownReferenceError, ValidationError
from .money import round2
from .news import NewsEvent

QUALITY_TIERS = (0.2, 0.4, 0.6, 0.8, 1.0)
COST_FACTORS = (0.35, 0.42, 0.50, 0.58, 0.65)


@dataclass
class Supplier:
    supplier_id: str
    sku_id: str
    base_cost: float
    quality: float
    lead_time_min: int
    lead_time_max: int


@dataclass
class PurchaseOrder:
    order_id: int
    sku_id: str
    supplier_id: str
    quantity: int
    unit_cost_paid: float
    placed_day: int
    arrival_day: int
    status: str = "pending"  # pending | delivered

    def to_dict(self) -> dict:
        return {
            "order_id": self.order_id,
            "sku_id": self.sku_id,
            "supplier_id": self.supplier_id,
            "quantity": self.quantity,
            "unit_cost_paid": self.unit_cost_paid,
            "placed_day": self.placed_day,
            "arrival_day": self.arrival_day,
            "status": self.status,
        }


class SupplierBook:
    """Supplier table plus the episode's order book (single writer)."""

    def __init__(self, suppliers: dict[str, list[Supplier]]):
        self.suppliers = suppliers
        self._by_id = {s.supplier_id: s for lst in suppliers.values() for s in lst}
        self.orders: list[PurchaseOrder] = []
        self._orders_by_id: dict[int, PurchaseOrder] = {}
        self._next_order_id = 1

    @classmethod
    def generate(cls, catalog: Catalog, seed: int) -> "SupplierBook":
        rng = np.random.default_rng(seed)
        table: dict[str, list[Supplier]] = {}
        for spec in catalog.skus:
            suppliers = []
            for k, (quality, factor) in enumerate(zip(QUALITY_TIERS, COST_FACTORS)):
                cost = max(0.01, round2(spec.base_price * factor))
                lead_min = int(rng.integers(1, 4))
                lead_max = int(rng.integers(lead_min, 8))
                suppliers.append(Supplier(
                    supplier_id=f"sup-{spec.sku_id}-{k + 1}",
                    sku_id=spec.sku_id,
                    base_cost=cost,
                    quality=quality,
                    lead_time_min=lead_min,
                    lead_time_max=lead_max,
                ))
            table[spec.sku_id] = suppliers
        return cls(table)

    def reference_costs(self) -> dict[str, float]:
        return {
            sku_id: round2(sum(s.base_cost for s in lst) / len(lst))
            for sku_id, lst in self.suppliers.items()
        }

    def supplier(self, sku_id: str, supplier_id: str) -> Supplier:
        sup = self._by_id.get(supplier_id)
        if sup is None or sup.sku_id != sku_id:
            raise UnknownReferenceError(
                f"unknown supplier {supplier_id!r} for sku {sku_id!r}"
            )
        return sup

    def quote(self, sku_id: str, supplier_id: str, category_id: str,
              active_news: list[NewsEvent]) -> float:
        sup = self.supplier(sku_id, supplier_id)
        mult = news.supply_multiplier(sku_id, category_id, active_news)
        if mult == 1.0:
            return sup.base_cost
        return round2(sup.base_cost * mult)

    def quote_prices(self, catalog: Catalog, active_news: list[NewsEvent],
                     sku_id: str | None = None) -> dict[str, list[dict]]:
        """Current quotes per SKU, optionally restricted to one SKU."""
        sku_ids = [sku_id] if sku_id is not None else catalog.sku_ids
        out: dict[str, list[dict]] = {}
        for sid in sku_ids:
            if sid not in self.suppliers:
                raise UnknownReferenceError(f"unknown sku {sid!r}")
            category = catalog.category_of(sid)
            out[sid] = [
                {
                    "supplier_id": s.supplier_id,
                    "price": self.quote(sid, s.supplier_id, category, active_news),
                    "quality": s.quality,
                    "lead_time_min": s.lead_time_min,
                    "lead_time_max": s.lead_time_max,
                }
                for s in self.suppliers[sid]
            ]
        return out

    def place_order(self, sku_id: str, supplier_id: str, quantity: int, day: int,
                    unit_cost: float, rng: np.random.Generator) -> PurchaseOrder:
        """Record an order; the caller has already validated funds and quoted cost."""
        sup = self.supplier(sku_id, supplier_id)
        if quantity <= 0:
            raise ValidationError("order quantity must be positive")
        lead = int(rng.integers(sup.lead_time_min, sup.lead_time_max + 1))
        order = PurchaseOrder(
            order_id=self._next_order_id,
            sku_id=sku_id,
            supplier_id=supplier_id,
            quantity=int(quantity),
            unit_cost_paid=unit_cost,
            placed_day=day,
            arrival_day=day + lead,
        )
        self._next_order_id += 1
        self.orders.append(order)
        self._orders_by_id[order.order_id] = order
        return order

    def deliveries_due(self, day: int) -> list[PurchaseOrder]:
        """Pending orders arriving today, in order-id order; marks them delivered."""
        due = [o for o in self.orders if o.status == "pending" and o.arrival_day == day]
        due.sort(key=lambda o: o.order_id)
        for order in due:
            order.status = "delivered"
        return due

    def pending_orders(self) -> list[PurchaseOrder]:
        return [o for o in self.orders if o.status == "pending"]

    def order_by_id(self, order_id: int) -> PurchaseOrder | None:
        return self._orders_by_id.get(order_id)

    def quality_of_order(self, order_id: int) -> float:
        order = self.order_by_id(order_id)
        if order is None:
            raise UnknownReferenceError(f"unknown order {order_id}")
        return self._by_id[order.supplier_id].quality
