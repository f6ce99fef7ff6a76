"""Episode configuration: dataclasses, validation, presets, and JSON I/O."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from .errors import ConfigError

EASY_CATEGORIES = [
    "Bathroom_Tissues",
    "Canned_Soup",
    "Cigarettes",
    "Front_end_candies",
    "Soft_Drinks",
]

FULL_CATEGORIES = [
    "Bathroom_Tissues", "Beer", "Bottled_Juices", "Canned_Soup", "Canned_Tuna",
    "Cereals", "Cheeses", "Cigarettes", "Cookies", "Crackers",
    "Dish_Detergent", "Fabric_Softeners", "Front_end_candies", "Frozen_Entrees",
    "Frozen_Juices", "Oatmeal", "Paper_Towels", "Snack_Crackers",
    "Soft_Drinks", "Toothpastes",
]

NEWS_SCOPES = ("neutral", "single_category", "macro_all", "sku_level")


@dataclass
class TrafficConfig:
    base: float = 500.0
    # Mon..Sun multipliers; day 1 of an episode maps to index 0.
    weekday_factors: list[float] = field(
        default_factory=lambda: [1.0, 1.0, 1.0, 1.0, 1.0, 1.3, 1.5]
    )


@dataclass
class NewsConfig:
    enabled: bool = False
    daily_count: int = 20
    base_scale: float = 0.4
    sample_ratios: dict[str, float] = field(
        default_factory=lambda: {
            "neutral": 0.9,
            "single_category": 0.02,
            "macro_all": 0.03,
            "sku_level": 0.05,
        }
    )
    mode_weights: dict[str, float] = field(
        default_factory=lambda: {
            "neutral": 0.0,
            "macro_all": 1.0,
            "single_category": 1.0,
            "sku_level": 1.2,
        }
    )
    ttl_min: int = 1
    ttl_max: int = 7
    seed: int = 42


@dataclass
class CatalogConfig:
    categories: list[str] = field(default_factory=lambda: list(EASY_CATEGORIES))
    skus_per_category: int = 5
    # When set, SKUs are spread as evenly as possible over the categories
    # (earlier categories receive the remainder) instead of skus_per_category.
    total_skus: int | None = None
    category_effect: float = -0.2
    alpha_range: list[float] = field(default_factory=lambda: [-4.5, -3.0])
    beta_range: list[float] = field(default_factory=lambda: [-0.8, -0.2])
    gamma: float = -0.01
    shelf_life_range: list[int] = field(default_factory=lambda: [7, 60])
    base_price_range: list[float] = field(default_factory=lambda: [0.5, 8.0])


@dataclass
class ReviewConfig:
    review_ratio: float = 0.02
    return_base: float = 0.1
    weight: float = 0.5
    recent_window: int = 14


@dataclass
class EpisodeConfig:
    initial_funds: float = 10_000.0
    daily_rent: float = 250.0
    inventory_capacity: int = 10_000
    catalog: CatalogConfig = field(default_factory=CatalogConfig)
    traffic: TrafficConfig = field(default_factory=TrafficConfig)
    news: NewsConfig = field(default_factory=NewsConfig)
    reviews: ReviewConfig = field(default_factory=ReviewConfig)
    # Total expected daily sales at base prices used by alpha calibration.
    target_daily_sales: float = 350.0
    epoch_date: str = "1991-09-07"
    max_days: int = 200
    seed: int = 42
    catalog_path: str | None = None

    def validate(self) -> None:
        if self.initial_funds <= 0:
            raise ConfigError("initial_funds must be positive")
        if self.daily_rent <= 0:
            raise ConfigError("daily_rent must be positive")
        if self.inventory_capacity <= 0:
            raise ConfigError("inventory_capacity must be positive")
        if not self.catalog.categories:
            raise ConfigError("at least one category is required")
        if self.catalog.total_skus is None and self.catalog.skus_per_category < 1:
            raise ConfigError("skus_per_category must be >= 1")
        if self.traffic.base <= 0:
            raise ConfigError("traffic.base must be positive")
        if len(self.traffic.weekday_factors) != 7:
            raise ConfigError("traffic.weekday_factors must have 7 entries")
        if not 0.0 <= self.reviews.review_ratio <= 1.0:
            raise ConfigError("review_ratio must be in [0, 1]")
        if not 0.0 <= self.reviews.return_base <= 1.0:
            raise ConfigError("return_base must be in [0, 1]")
        if self.target_daily_sales <= 0 or self.target_daily_sales >= self.traffic.base:
            raise ConfigError("target_daily_sales must be in (0, traffic.base)")
        ratios = self.news.sample_ratios
        if set(ratios) != set(NEWS_SCOPES):
            raise ConfigError(f"news.sample_ratios must have keys {NEWS_SCOPES}")
        if abs(sum(ratios.values()) - 1.0) > 1e-9:
            raise ConfigError("news.sample_ratios must sum to 1")
        if any(v < 0 for v in ratios.values()):
            raise ConfigError("news.sample_ratios must be nonnegative")
        if any(v < 0 for v in self.news.mode_weights.values()):
            raise ConfigError("news.mode_weights must be nonnegative")
        if not 1 <= self.news.ttl_min <= self.news.ttl_max:
            raise ConfigError("news ttl bounds must satisfy 1 <= min <= max")
        if self.max_days < 1:
            raise ConfigError("max_days must be >= 1")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "EpisodeConfig":
        try:
            cfg = cls(
                **{
                    **{k: v for k, v in data.items()
                       if k not in ("catalog", "traffic", "news", "reviews")},
                    "catalog": CatalogConfig(**data.get("catalog", {})),
                    "traffic": TrafficConfig(**data.get("traffic", {})),
                    "news": NewsConfig(**data.get("news", {})),
                    "reviews": ReviewConfig(**data.get("reviews", {})),
                }
            )
        except TypeError as exc:
            raise ConfigError(f"bad config: {exc}") from exc
        cfg.validate()
        return cfg


def preset(name: str) -> EpisodeConfig:
    """Built-in easy/middle/hard configurations."""
    if name == "easy":
        return EpisodeConfig()
    if name == "middle":
        return EpisodeConfig(
            initial_funds=50_000.0,
            daily_rent=1_000.0,
            inventory_capacity=40_000,
            catalog=CatalogConfig(categories=list(FULL_CATEGORIES), total_skus=96),
            traffic=TrafficConfig(base=2_000.0),
            target_daily_sales=1_200.0,
        )
    if name == "hard":
        cfg = preset("middle")
        cfg.news = NewsConfig(enabled=True)
        return cfg
    raise ConfigError(f"unknown preset {name!r}")


def load_config(path: str) -> EpisodeConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    return EpisodeConfig.from_dict(data)


def save_config(cfg: EpisodeConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cfg.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
