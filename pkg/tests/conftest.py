import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def qq():
    from clusterfrob import QQ
    return QQ


@pytest.fixture
def gf5():
    from clusterfrob import GF
    return GF(5)
