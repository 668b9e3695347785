from __future__ import annotations

import os
import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "sbk",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("sbk")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(int(os.environ.get("SBK_SEED", "20240917")))
