import logging

import numpy as np
import pytest


@pytest.fixture(autouse=True)
def enable_logging(caplog: pytest.LogCaptureFixture):
    caplog.set_level(logging.DEBUG, "hyperfine_phase")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
