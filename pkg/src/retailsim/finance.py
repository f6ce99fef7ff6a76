"""Funds, rent settlement, depreciated net worth, and termination.

Funds never go negative: an unaffordable rent is skipped and counted toward
the consecutive-unpaid-rent failure counter instead of accruing debt.  The
episode terminates once rent has gone unpaid five days in a row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import Catalog
from .errors import FundsError
from .inventory import InventoryLedger
from .money import round2

TERMINATION_UNPAID_DAYS = 5


@dataclass
class FinancialState:
    funds: float
    consecutive_unpaid_rent_days: int = 0
    cumulative_income: float = 0.0
    cumulative_procurement: float = 0.0
    cumulative_rent_paid: float = 0.0


@dataclass
class RentOutcome:
    paid: bool
    rent_due: float
    funds_after: float
    unpaid_streak: int


def settle_day(state: FinancialState, revenue: float, refunds: float,
               rent: float) -> RentOutcome:
    income = round2(revenue - refunds)
    state.funds = round2(state.funds + income)
    state.cumulative_income = round2(state.cumulative_income + income)
    if state.funds >= rent:
        state.funds = round2(state.funds - rent)
        state.cumulative_rent_paid = round2(state.cumulative_rent_paid + rent)
        state.consecutive_unpaid_rent_days = 0
        paid = True
    else:
        state.consecutive_unpaid_rent_days += 1
        paid = False
    return RentOutcome(paid, rent, state.funds, state.consecutive_unpaid_rent_days)


def debit_procurement(state: FinancialState, amount: float) -> None:
    amount = round2(amount)
    if amount < 0:
        raise FundsError("procurement amount must be nonnegative")
    if state.funds < amount:
        raise FundsError(
            f"insufficient funds: {state.funds:.2f} available, {amount:.2f} required"
        )
    state.funds = round2(state.funds - amount)
    state.cumulative_procurement = round2(state.cumulative_procurement + amount)


def net_worth(state: FinancialState, ledger: InventoryLedger,
              catalog: Catalog, day: int) -> float:
    """Funds plus linearly depreciated value of on-hand lots (queue excluded)."""
    value = 0.0
    for sku_id, lots in ledger.lots.items():
        spec = catalog.sku(sku_id)
        for lot in lots:
            age = day - lot.arrival_day
            value += lot.quantity * spec.reference_cost * max(
                0.0, 1.0 - age / spec.shelf_life_days
            )
    return round2(state.funds + value)


def check_termination(state: FinancialState) -> bool:
    return state.consecutive_unpaid_rent_days >= TERMINATION_UNPAID_DAYS
