import pytest
from hypothesis import settings

from helpers import load_frozen, load_order

settings.register_profile("folkman", deadline=None)
settings.load_profile("folkman")


@pytest.fixture(scope="session")
def frozen():
    return load_frozen()


@pytest.fixture(scope="session")
def classes6():
    """All unlabeled graphs through order 6, one representative each."""
    return [g for n in range(1, 7) for g in load_order(n)]


@pytest.fixture(scope="session")
def order7():
    return load_order(7)
