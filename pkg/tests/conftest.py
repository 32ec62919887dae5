"""Test configuration and fixtures."""

import os

import pytest

from src.app.dependencies import get_artifact_store, get_preset_loader
from src.domain.services import PinnedConstants
from src.infra.config import get_settings, reset_settings

# Made-up values for constants without a closed form; only consistency is tested with them
PINNED_VALUES = {
    "H_0.5": 1.3,
    "H_0.75": 1.1,
    "H_1.5": 0.8,
    "hat_H_1^(1,-1)": 1.7,
}


def _clear_caches() -> None:
    reset_settings()
    get_artifact_store.cache_clear()
    get_preset_loader.cache_clear()


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings and empty factory caches."""
    for key in list(os.environ):
        if key.startswith("CURVE_EXTREMES_"):
            monkeypatch.delenv(key)
    _clear_caches()
    yield
    _clear_caches()


@pytest.fixture
def fast_settings(monkeypatch):
    """Small Monte Carlo defaults so estimators finish quickly."""
    monkeypatch.setenv("CURVE_EXTREMES_DEFAULT_REPS", "400")
    monkeypatch.setenv("CURVE_EXTREMES_DEFAULT_STEP", "0.1")
    monkeypatch.setenv("CURVE_EXTREMES_DEFAULT_LADDER_1D", "[1, 2]")
    monkeypatch.setenv("CURVE_EXTREMES_DEFAULT_LADDER_STRIP", "[0.5, 1]")
    reset_settings()
    return get_settings()


@pytest.fixture
def pinned_constants():
    """Constants provider with closed forms plus the made-up pinned table."""
    return PinnedConstants(PINNED_VALUES)


@pytest.fixture
def closed_forms_only():
    """Constants provider that only knows exact constants."""
    return PinnedConstants({})


@pytest.fixture
def output_dir(tmp_path):
    """Parent directory for run directories."""
    path = tmp_path / "runs"
    path.mkdir()
    return path
