import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from core.algebra import MetricSignature, semidirect
from core.clifford import build_rep

# exact arithmetic is slow; keep example counts small and drop the deadline
settings.register_profile(
    "exact",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

STATES_DIR = Path(__file__).resolve().parent.parent / "data" / "states"


@pytest.fixture
def states_dir() -> Path:
    return STATES_DIR


@pytest.fixture
def euclidean() -> MetricSignature:
    return MetricSignature(4, 0)


@pytest.fixture
def lorentzian() -> MetricSignature:
    return MetricSignature(1, 3)


@pytest.fixture(scope="session")
def euclidean_algebra():
    return semidirect(MetricSignature(4, 0))


@pytest.fixture(scope="session")
def poincare_algebra():
    return semidirect(MetricSignature(1, 3))


@pytest.fixture(scope="session")
def euclidean_rep():
    return build_rep(MetricSignature(4, 0))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(7)

