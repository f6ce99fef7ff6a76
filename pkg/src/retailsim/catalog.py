"""Product universe: SKU specs, demand parameters, loading and generation.

Catalogs are immutable after construction.  A real tabular file can be
loaded (schema ``sku_id,description,category,shelf_life_days,base_price``),
or a synthetic catalog can be generated deterministically from a config and
seed when no data file is available.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .config import CatalogConfig
from .errors import CalibrationError, ConfigError, SchemaError, ValidationError
from .money import round2

CATALOG_COLUMNS = ["sku_id", "description", "category", "shelf_life_days", "base_price"]


@dataclass(frozen=True)
class SkuSpec:
    sku_id: str
    description: str
    category_id: str
    shelf_life_days: int
    base_price: float
    reference_cost: float = 0.0  # mean supplier cost, filled in by supply


@dataclass
class DemandParams:
    alpha: np.ndarray        # intrinsic preference per SKU
    beta: np.ndarray         # price sensitivity per SKU, strictly negative
    gamma: np.ndarray        # (j, i) cross effects, nonzero only within a category
    category_effect: dict[str, float]


class Catalog:
    def __init__(self, skus: list[SkuSpec], categories: list[str], demand_params: DemandParams):
        self.skus = list(skus)
        self.categories = list(categories)
        self.demand_params = demand_params
        self.index = {s.sku_id: i for i, s in enumerate(self.skus)}
        if len(self.index) != len(self.skus):
            raise ValidationError("duplicate sku_id in catalog")
        for s in self.skus:
            if s.category_id not in self.categories:
                raise ValidationError(f"sku {s.sku_id} has unknown category {s.category_id}")

    def __len__(self) -> int:
        return len(self.skus)

    def sku(self, sku_id: str) -> SkuSpec:
        return self.skus[self.index[sku_id]]

    @property
    def sku_ids(self) -> list[str]:
        return [s.sku_id for s in self.skus]

    def category_of(self, sku_id: str) -> str:
        return self.sku(sku_id).category_id

    def base_prices(self) -> np.ndarray:
        return np.array([s.base_price for s in self.skus])

    def shelf_lives(self) -> np.ndarray:
        return np.array([s.shelf_life_days for s in self.skus])

    def with_reference_costs(self, costs: dict[str, float]) -> "Catalog":
        skus = [replace(s, reference_cost=costs.get(s.sku_id, s.reference_cost))
                for s in self.skus]
        return Catalog(skus, self.categories, self.demand_params)

    def category_effects(self) -> np.ndarray:
        eff = self.demand_params.category_effect
        return np.array([eff.get(s.category_id, 0.0) for s in self.skus])


def _category_gamma(skus: list[SkuSpec], gamma_const: float) -> np.ndarray:
    n = len(skus)
    g = np.zeros((n, n))
    for j in range(n):
        for i in range(n):
            if i != j and skus[i].category_id == skus[j].category_id:
                g[j, i] = gamma_const
    return g


def _hashed_uniform(key: str, low: float, high: float) -> float:
    """Deterministic pseudo-uniform draw keyed by a string."""
    digest = hashlib.sha256(key.encode()).digest()
    u = int.from_bytes(digest[:8], "little") / 2**64
    return low + (high - low) * u


def load_catalog(path: str, config: CatalogConfig) -> Catalog:
    """Load a catalog from a CSV file, keeping only configured categories.

    Demand parameters are not part of the file schema; they are derived
    deterministically per SKU from the config ranges so repeated loads are
    structurally identical.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or any(c not in reader.fieldnames for c in CATALOG_COLUMNS):
            raise SchemaError(
                f"catalog file must have columns {CATALOG_COLUMNS}, got {reader.fieldnames}"
            )
        rows = list(reader)

    skus: list[SkuSpec] = []
    seen: set[str] = set()
    for row in rows:
        category = row["category"]
        if category not in config.categories:
            raise ValidationError(f"unknown category {category!r} in catalog file")
        sku_id = row["sku_id"]
        if sku_id in seen:
            raise ValidationError(f"duplicate sku_id {sku_id!r}")
        seen.add(sku_id)
        try:
            shelf_life = int(row["shelf_life_days"])
            base_price = float(row["base_price"])
        except ValueError as exc:
            raise SchemaError(f"bad numeric value in row {sku_id}: {exc}") from exc
        if shelf_life < 1 or base_price <= 0:
            raise ValidationError(f"sku {sku_id}: shelf_life >= 1 and base_price > 0 required")
        skus.append(SkuSpec(sku_id, row["description"], category, shelf_life, base_price))

    alpha = np.array([
        _hashed_uniform(f"alpha:{s.sku_id}", *config.alpha_range) for s in skus
    ])
    beta = np.array([
        _hashed_uniform(f"beta:{s.sku_id}", *config.beta_range) for s in skus
    ])
    params = DemandParams(
        alpha=alpha,
        beta=beta,
        gamma=_category_gamma(skus, config.gamma),
        category_effect={c: config.category_effect for c in config.categories},
    )
    return Catalog(skus, list(config.categories), params)


def _sku_counts(config: CatalogConfig) -> list[int]:
    n_cat = len(config.categories)
    if config.total_skus is not None:
        base, extra = divmod(config.total_skus, n_cat)
        return [base + (1 if i < extra else 0) for i in range(n_cat)]
    return [config.skus_per_category] * n_cat


def generate_synthetic_catalog(config: CatalogConfig, seed: int) -> Catalog:
    """Deterministic synthetic catalog standing in for the real dataset."""
    if not config.categories:
        raise ConfigError("at least one category is required")
    rng = np.random.default_rng(seed)
    skus: list[SkuSpec] = []
    alphas: list[float] = []
    betas: list[float] = []
    for cat_idx, (category, count) in enumerate(zip(config.categories, _sku_counts(config))):
        for i in range(count):
            sku_id = str(1_000_000_000 + cat_idx * 100_000 + (i + 1) * 137)
            shelf_life = int(rng.integers(config.shelf_life_range[0],
                                          config.shelf_life_range[1] + 1))
            base_price = round2(rng.uniform(*config.base_price_range))
            skus.append(SkuSpec(sku_id, f"{category} item {i + 1}", category,
                                shelf_life, base_price))
            alphas.append(float(rng.uniform(*config.alpha_range)))
            betas.append(float(rng.uniform(*config.beta_range)))
    params = DemandParams(
        alpha=np.array(alphas),
        beta=np.array(betas),
        gamma=_category_gamma(skus, config.gamma),
        category_effect={c: config.category_effect for c in config.categories},
    )
    return Catalog(skus, list(config.categories), params)


def expected_daily_sales(catalog: Catalog, traffic: float,
                         alpha_offset: float = 0.0) -> float:
    """Expected units/day at base prices with no review or news effects."""
    from .demand import choice_probabilities, compute_utilities

    params = catalog.demand_params
    zeros = np.zeros(len(catalog))
    u = compute_utilities(
        prices=catalog.base_prices(),
        delta_reviews=zeros,
        delta_news=zeros,
        alpha=params.alpha + alpha_offset,
        beta=params.beta,
        gamma=params.gamma,
        category_effect=catalog.category_effects(),
    )
    return traffic * float(np.sum(choice_probabilities(u.augmented)))


def calibrate_alpha(catalog: Catalog, target_daily_sales: float, traffic: float,
                    tolerance: float = 0.5, delta_bounds: tuple[float, float] = (-20.0, 20.0)
                    ) -> Catalog:
    """Shift every alpha by a common offset so expected daily sales hit target.

    The offset is found by root finding on the expected-sales curve evaluated
    at base prices with no review/news effects.  Raises if no offset within
    ``delta_bounds`` reaches the target.
    """
    if target_daily_sales <= 0:
        raise CalibrationError("target_daily_sales must be positive")
    if target_daily_sales >= traffic:
        raise CalibrationError("target_daily_sales must be below traffic")

    def f(delta: float) -> float:
        return expected_daily_sales(catalog, traffic, delta) - target_daily_sales

    # Expected sales are not globally monotone in the offset (the within-
    # category cannibalization term eventually dominates), so locate a
    # bracketing interval on a grid before bisecting.
    lo, hi = delta_bounds
    grid = np.linspace(lo, hi, 161)
    values = [f(d) for d in grid]
    bracket = None
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if fa == 0.0:
            bracket = (a, a)
            break
        if fa * fb < 0:
            bracket = (a, b)
            break
    if bracket is None:
        raise CalibrationError(
            f"target {target_daily_sales} unreachable for offsets in {delta_bounds}"
        )
    if bracket[0] == bracket[1]:
        delta = bracket[0]
    else:
        delta = float(brentq(f, *bracket, xtol=1e-10))
    if abs(f(delta)) > tolerance:
        raise CalibrationError("calibration did not converge within tolerance")
    params = catalog.demand_params
    new_params = DemandParams(
        alpha=params.alpha + delta,
        beta=params.beta,
        gamma=params.gamma,
        category_effect=dict(params.category_effect),
    )
    return Catalog(catalog.skus, catalog.categories, new_params)
