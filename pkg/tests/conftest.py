import pytest
from hypothesis import HealthCheck, settings

from app.core.config import Settings
from app.services.sampling import make_rng

settings.register_profile(
    "weil", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("weil")


@pytest.fixture
def rng():
    return make_rng(0)


@pytest.fixture
def small_bounds():
    return Settings(max_blocks=2, max_width=2, max_terms=2, max_coef=2)
