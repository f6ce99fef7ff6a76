import numpy as np
import pytest

from retailsim.catalog import generate_synthetic_catalog
from retailsim.config import CatalogConfig
from retailsim.errors import UnknownReferenceError, ValidationError
from retailsim.money import round2
from retailsim.news import NewsEvent
from retailsim.supply import COST_FACTORS, QUALITY_TIERS, SupplierBook


@pytest.fixture(scope="module")
def book_and_catalog():
    catalog = generate_synthetic_catalog(CatalogConfig(), 3)
    return SupplierBook.generate(catalog, 11), catalog


def test_five_suppliers_per_sku_on_the_ladder(book_and_catalog):
    book, catalog = book_and_catalog
    for spec in catalog.skus:
        sups = book.suppliers[spec.sku_id]
        assert len(sups) == 5
        assert tuple(s.quality for s in sups) == QUALITY_TIERS
        for s, factor in zip(sups, COST_FACTORS):
            assert s.base_cost == max(0.01, round2(spec.base_price * factor))
            assert 1 <= s.lead_time_min <= s.lead_time_max <= 7
        # cheapest is lowest quality; exactly one supplier has max quality
        costs = [s.base_cost for s in sups]
        qualities = [s.quality for s in sups]
        assert costs.index(min(costs)) == qualities.index(min(qualities))
        assert qualities.count(max(qualities)) == 1


def test_reference_cost_is_mean_of_base_costs(book_and_catalog):
    book, catalog = book_and_catalog
    refs = book.reference_costs()
    for sku_id, sups in book.suppliers.items():
        assert refs[sku_id] == round2(sum(s.base_cost for s in sups) / 5)


def test_unknown_supplier_rejected(book_and_catalog):
    book, catalog = book_and_catalog
    sku = catalog.sku_ids[0]
    with pytest.raises(UnknownReferenceError):
        book.supplier(sku, "sup-nope-1")
    # a real supplier id bound to a different sku is also rejected
    other = catalog.sku_ids[1]
    wrong = book.suppliers[other][0].supplier_id
    with pytest.raises(UnknownReferenceError):
        book.supplier(sku, wrong)


def test_quote_applies_supply_news(book_and_catalog):
    book, catalog = book_and_catalog
    sku = catalog.sku_ids[0]
    cat = catalog.category_of(sku)
    sup = book.suppliers[sku][0]
    assert book.quote(sku, sup.supplier_id, cat, []) == sup.base_cost
    shock = [NewsEvent(1, "macro", None, "supply", 1, 0.5, "t", 3, 1)]
    assert book.quote(sku, sup.supplier_id, cat, shock) == round2(sup.base_cost * 1.5)


def test_order_lifecycle(book_and_catalog):
    book, catalog = book_and_catalog
    sku = catalog.sku_ids[0]
    sup = book.suppliers[sku][2]
    rng = np.random.default_rng(5)
    order = book.place_order(sku, sup.supplier_id, 30, day=4, unit_cost=1.11, rng=rng)
    assert order.order_id >= 1
    assert sup.lead_time_min <= order.arrival_day - 4 <= sup.lead_time_max
    assert order.status == "pending"
    assert order in book.pending_orders()
    due = book.deliveries_due(order.arrival_day)
    assert order in due and order.status == "delivered"
    assert order not in book.pending_orders()
    assert book.deliveries_due(order.arrival_day) == []  # not delivered twice
    assert book.quality_of_order(order.order_id) == sup.quality


def test_place_order_rejects_nonpositive_quantity(book_and_catalog):
    book, catalog = book_and_catalog
    sku = catalog.sku_ids[0]
    sup = book.suppliers[sku][0]
    with pytest.raises(ValidationError):
        book.place_order(sku, sup.supplier_id, 0, 1, 1.0, np.random.default_rng(0))
