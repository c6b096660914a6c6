import pytest

from rtca.catalog import balanced, first_last_eq, letter_star, \
    marked_range_a


@pytest.fixture(scope="session")
def fle():
    return first_last_eq()


@pytest.fixture(scope="session")
def bal():
    return balanced()


@pytest.fixture(scope="session")
def star_a():
    return letter_star("a")


@pytest.fixture(scope="session")
def star_b():
    return letter_star("b")


@pytest.fixture(scope="session")
def mra():
    return marked_range_a("1/3", "1/2")
