"""Shared fixtures for the zeta-regularized test suite."""

import numpy as np
import pytest

from zeta_regularized.config import DEFAULT_CONFIG, SERIES_CONFIG, Settings


@pytest.fixture
def cfg():
    """Hurwitz/Lerch evaluation config (N=50, J=12)."""
    return DEFAULT_CONFIG


@pytest.fixture
def series_cfg():
    """Series evaluation config (N=10^4, J=8)."""
    return SERIES_CONFIG


@pytest.fixture
def settings():
    """Default settings with a single worker so failures are easy to trace."""
    return Settings(workers=1)


@pytest.fixture
def rng():
    """Seeded generator for the random grids used by property checks."""
    return np.random.default_rng(20240614)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Remove ZETAREG_* variables and point the config dir at an empty temp dir."""
    monkeypatch.delenv("ZETAREG_QUAD_TOL", raising=False)
    monkeypatch.delenv("ZETAREG_WORKERS", raising=False)
    monkeypatch.setattr("zeta_regularized.config.CONFIG_DIR", tmp_path)
    return tmp_path
