"""Age-tracked inventory with a global capacity cap and FIFO pending queue.

Units in the pending queue do not age, are not sellable, and do not count
toward net worth; a lot's shelf-life countdown starts when it is released
into on-hand stock.  Expiration uses the strict rule: a unit is removed once
its residence time exceeds its shelf life, so it is still sellable on the
shelf-life-th day.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import SimError


class InternalConsistencyError(SimError):
    code = "internal_error"


@dataclass
class Lot:
    sku_id: str
    quantity: int
    arrival_day: int
    shelf_life_days: int
    unit_cost: float
    order_id: int


@dataclass
class ArrivalBatch:
    """One delivered order, ready to be shelved or queued."""
    order_id: int
    sku_id: str
    quantity: int
    unit_cost: float
    shelf_life_days: int


@dataclass
class PendingEntry:
    order_id: int
    sku_id: str
    quantity: int
    unit_cost: float
    shelf_life_days: int


class InventoryLedger:
    def __init__(self, capacity: int):
        self.capacity = int(capacity)
        self.lots: dict[str, list[Lot]] = {}
        self.pending: deque[PendingEntry] = deque()
        self.total_expired = 0

    # -- queries -----------------------------------------------------------

    def onhand(self, sku_id: str) -> int:
        return sum(lot.quantity for lot in self.lots.get(sku_id, ()))

    def total_onhand(self) -> int:
        return sum(lot.quantity for lots in self.lots.values() for lot in lots)

    def free_space(self) -> int:
        return self.capacity - self.total_onhand()

    def pending_units(self, sku_id: str | None = None) -> int:
        if sku_id is None:
            return sum(e.quantity for e in self.pending)
        return sum(e.quantity for e in self.pending if e.sku_id == sku_id)

    def snapshot(self, day: int) -> dict:
        """Per-SKU (age, quantity) pairs plus pending totals, for logs."""
        out = {}
        for sku_id, lots in self.lots.items():
            if lots:
                out[sku_id] = [[day - lot.arrival_day, lot.quantity] for lot in lots]
        pending = {}
        for e in self.pending:
            pending[e.sku_id] = pending.get(e.sku_id, 0) + e.quantity
        return {"lots": out, "pending": pending}

    # -- mutations ---------------------------------------------------------

    def _add_lot(self, sku_id: str, quantity: int, day: int, shelf_life: int,
                 unit_cost: float, order_id: int) -> None:
        self.lots.setdefault(sku_id, []).append(
            Lot(sku_id, quantity, day, shelf_life, unit_cost, order_id)
        )

    def add_arrivals(self, deliveries: list[ArrivalBatch], day: int
                     ) -> tuple[dict[str, int], dict[str, int]]:
        """Shelve deliveries up to remaining capacity; overflow joins the queue."""
        placed: dict[str, int] = {}
        queued: dict[str, int] = {}
        free = self.free_space()
        for batch in deliveries:
            fit = min(batch.quantity, max(0, free))
            if fit > 0:
                self._add_lot(batch.sku_id, fit, day, batch.shelf_life_days,
                              batch.unit_cost, batch.order_id)
                placed[batch.sku_id] = placed.get(batch.sku_id, 0) + fit
                free -= fit
            rest = batch.quantity - fit
            if rest > 0:
                self.pending.append(PendingEntry(batch.order_id, batch.sku_id, rest,
                                                 batch.unit_cost, batch.shelf_life_days))
                queued[batch.sku_id] = queued.get(batch.sku_id, 0) + rest
        return placed, queued

    def release_pending(self, day: int) -> dict[str, int]:
        """Pop queue entries FIFO while capacity allows; head may split."""
        released: dict[str, int] = {}
        free = self.free_space()
        while self.pending and free > 0:
            head = self.pending[0]
            take = min(head.quantity, free)
            self._add_lot(head.sku_id, take, day, head.shelf_life_days,
                          head.unit_cost, head.order_id)
            released[head.sku_id] = released.get(head.sku_id, 0) + take
            free -= take
            head.quantity -= take
            if head.quantity == 0:
                self.pending.popleft()
        return released

    def consume_sales(self, sold: dict[str, int], day: int
                      ) -> dict[str, list[tuple[int, float, int]]]:
        """Remove sold units oldest-lot-first.

        Returns per SKU the consumed breakdown as (quantity, unit_cost,
        order_id) tuples, in consumption order, for cost-of-goods and
        quality attribution.
        """
        consumed: dict[str, list[tuple[int, float, int]]] = {}
        for sku_id, qty in sold.items():
            if qty == 0:
                continue
            lots = self.lots.get(sku_id, [])
            if sum(lot.quantity for lot in lots) < qty:
                raise InternalConsistencyError(
                    f"oversell of sku {sku_id}: {qty} requested"
                )
            remaining = qty
            taken: list[tuple[int, float, int]] = []
            while remaining > 0:
                lot = lots[0]
                take = min(lot.quantity, remaining)
                taken.append((take, lot.unit_cost, lot.order_id))
                lot.quantity -= take
                remaining -= take
                if lot.quantity == 0:
                    lots.pop(0)
            consumed[sku_id] = taken
            if not lots:
                self.lots.pop(sku_id, None)
        return consumed

    def expire_units(self, day: int) -> dict[str, int]:
        """Remove lots whose residence time strictly exceeds their shelf life."""
        expired: dict[str, int] = {}
        for sku_id in list(self.lots):
            keep: list[Lot] = []
            for lot in self.lots[sku_id]:
                if day - lot.arrival_day > lot.shelf_life_days:
                    expired[sku_id] = expired.get(sku_id, 0) + lot.quantity
                else:
                    keep.append(lot)
            if keep:
                self.lots[sku_id] = keep
            else:
                self.lots.pop(sku_id)
        self.total_expired += sum(expired.values())
        return expired


def consumed_cost(breakdown: list[tuple[int, float, int]]) -> float:
    return sum(qty * cost for qty, cost, _ in breakdown)
