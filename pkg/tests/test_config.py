import pytest

import config.config as config_module
from config import get_settings
from filters.search import Bounds


@pytest.fixture
def fresh_settings(monkeypatch):
    monkeypatch.setattr(config_module, "settings", None)
    yield
    monkeypatch.setattr(config_module, "settings", None)


class TestSettings:
    @staticmethod
    def test_defaults(fresh_settings):
        settings = get_settings()
        assert (settings.witness_depth, settings.max_conjuncts, settings.model_bound) == (2, 4, 3)
        assert settings.grounding_depth == 2

    @staticmethod
    def test_environment_overrides(fresh_settings, monkeypatch):
        monkeypatch.setenv("HERBRAND_WITNESS_DEPTH", "5")
        monkeypatch.setenv("HERBRAND_MODEL_BOUND", "1")
        settings = get_settings()
        assert settings.witness_depth == 5
        assert settings.grounding_depth == 5
        assert Bounds.from_settings().model_bound == 1

    @staticmethod
    def test_grounding_depth_can_be_pinned(fresh_settings, monkeypatch):
        monkeypatch.setenv("HERBRAND_INSTANTIATION_DEPTH", "1")
        assert get_settings().grounding_depth == 1

    @staticmethod
    def test_flags_win_over_settings(fresh_settings):
        bounds = Bounds.from_settings(depth=0, max_conjuncts=None, model_bound=0)
        assert (bounds.depth, bounds.max_conjuncts, bounds.model_bound) == (0, 4, 0)
