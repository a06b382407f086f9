import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture
def seed() -> int:
    return int(os.environ.get("RBX_SEED", 20240))
