import pytest

from retailsim.config import (
    EASY_CATEGORIES,
    FULL_CATEGORIES,
    EpisodeConfig,
    load_config,
    preset,
    save_config,
)
from retailsim.errors import ConfigError


def test_easy_preset_values():
    cfg = preset("easy")
    assert cfg.initial_funds == 10_000.0
    assert cfg.daily_rent == 250.0
    assert cfg.inventory_capacity == 10_000
    assert cfg.catalog.categories == EASY_CATEGORIES
    assert cfg.catalog.skus_per_category == 5
    assert cfg.traffic.base == 500.0
    assert cfg.traffic.weekday_factors == [1.0, 1.0, 1.0, 1.0, 1.0, 1.3, 1.5]
    assert cfg.news.enabled is False
    assert cfg.max_days == 200


def test_middle_and_hard_presets():
    mid = preset("middle")
    assert mid.initial_funds == 50_000.0
    assert mid.daily_rent == 1_000.0
    assert mid.inventory_capacity == 40_000
    assert mid.catalog.categories == FULL_CATEGORIES
    assert mid.catalog.total_skus == 96
    assert mid.news.enabled is False
    hard = preset("hard")
    assert hard.news.enabled is True
    assert hard.news.sample_ratios == {
        "neutral": 0.9, "single_category": 0.02, "macro_all": 0.03, "sku_level": 0.05,
    }
    assert hard.news.mode_weights["neutral"] == 0.0
    assert hard.news.mode_weights["sku_level"] == 1.2


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset("nightmare")


@pytest.mark.parametrize("mutate", [
    lambda c: setattr(c, "initial_funds", 0),
    lambda c: setattr(c, "daily_rent", -1),
    lambda c: setattr(c, "inventory_capacity", 0),
    lambda c: setattr(c.traffic, "weekday_factors", [1.0] * 6),
    lambda c: setattr(c.reviews, "review_ratio", 1.5),
    lambda c: setattr(c, "target_daily_sales", 0),
    lambda c: setattr(c, "target_daily_sales", 10_000),
    lambda c: c.news.sample_ratios.update({"neutral": 0.5}),
    lambda c: setattr(c.news, "ttl_min", 0),
    lambda c: setattr(c, "max_days", 0),
])
def test_validation_rejects(mutate):
    cfg = preset("easy")
    mutate(cfg)
    with pytest.raises(ConfigError):
        cfg.validate()


def test_round_trip_json(tmp_path):
    cfg = preset("hard")
    path = tmp_path / "cfg.json"
    save_config(cfg, str(path))
    loaded = load_config(str(path))
    assert loaded.to_dict() == cfg.to_dict()


def test_from_dict_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        EpisodeConfig.from_dict({"bogus_field": 1})
