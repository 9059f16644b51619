import pytest

from helpers import make_suite


@pytest.fixture(scope="session")
def suite_small():
    """Shared pool of random instances for module-level property tests."""
    return make_suite(80, seed=1234)
