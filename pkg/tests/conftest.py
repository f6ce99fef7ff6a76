import pytest

from retailsim.config import preset
from retailsim.engine import init_episode


@pytest.fixture
def easy_config():
    return preset("easy")


@pytest.fixture
def easy_state(easy_config):
    return init_episode(easy_config, 42)


@pytest.fixture
def short_config():
    cfg = preset("easy")
    cfg.max_days = 5
    return cfg
