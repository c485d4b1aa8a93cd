import pytest

from irrbounds import PrimeSieve


@pytest.fixture(scope="session")
def big_sieve() -> PrimeSieve:
    # large enough for bn = 7 * (10^5 + 1) in the convergence checks
    return PrimeSieve(720_000)


@pytest.fixture(scope="session")
def small_sieve() -> PrimeSieve:
    return PrimeSieve(10_000)
