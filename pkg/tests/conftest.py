import pytest

from wheel7.sieve import sieve_range


@pytest.fixture(scope="session")
def table_1m():
    return sieve_range(0, 10**6)


@pytest.fixture(scope="session")
def table_100k():
    return sieve_range(0, 10**5)
