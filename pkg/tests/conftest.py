"""Shared test fixtures and utilities."""

import io
import tempfile
from pathlib import Path

import numpy as np
import pytest

from hidden_qubit.config import AppConfig, DeviceConfig, QvolumeConfig, RunConfig
from hidden_qubit.logger import LogLevel, setup_logger


@pytest.fixture(autouse=True)
def quiet_logger():
    """
    Route the global logger into a buffer for every test.

    Tests that assert on log output read the returned stream.
    """
    stream = io.StringIO()
    setup_logger(min_level=LogLevel.DEBUG, output_stream=stream)
    yield stream
    setup_logger()


@pytest.fixture
def temp_config_dir():
    """Create a temporary directory for test configs."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng():
    """Deterministic random generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def small_test_config():
    """Configuration small enough for end-to-end command tests."""
    return AppConfig(
        run=RunConfig(seed=7, format="json"),
        device=DeviceConfig(noiseless=True),
        qvolume=QvolumeConfig(
            grids=[[2, 0], [2, 1]],
            gamma_taus=[4e-4],
            samples=4,
            differential=False,
            demo_k=2,
            demo_h=1,
        ),
    )
