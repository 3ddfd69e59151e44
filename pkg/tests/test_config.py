"""Environment settings and logging bootstrap."""
import logging

import pytest

from blockdet.config import ArithmeticMode, configure_logging, get_settings
from blockdet.errors import ConfigError


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def test_defaults(monkeypatch):
    for name in ("BLOCKDET_ARITHMETIC", "BLOCKDET_EPSILON", "BLOCKDET_RYSER_CAP"):
        monkeypatch.delenv(name, raising=False)
    s = get_settings()
    assert s.arithmetic == ArithmeticMode.EXACT
    assert s.epsilon == pytest.approx(2.373)
    assert s.ryser_cap == 30


def test_environment_override(monkeypatch):
    monkeypatch.setenv("BLOCKDET_ARITHMETIC", "float")
    monkeypatch.setenv("BLOCKDET_BORDERED", "true")
    monkeypatch.setenv("BLOCKDET_CACHE_WORKERS", "3")
    s = get_settings()
    assert s.arithmetic == ArithmeticMode.FLOAT
    assert s.bordered is True
    assert s.cache_workers == 3


@pytest.mark.parametrize("name, value", [("BLOCKDET_EPSILON", "5"), ("BLOCKDET_RYSER_CAP", "lots")])
def test_invalid_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        get_settings()


@pytest.mark.parametrize("verbosity, level", [(0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG)])
def test_verbosity(monkeypatch, verbosity, level):
    monkeypatch.delenv("BLOCKDET_LOG_LEVEL", raising=False)
    configure_logging(verbosity)
    assert logging.getLogger("blockdet").level == level
