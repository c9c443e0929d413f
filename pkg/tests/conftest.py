import pytest

from bitscape.optima import find_optima
from bitscape.problems import make_sin2dec


@pytest.fixture(scope="session")
def sin6():
    return make_sin2dec(6)


@pytest.fixture(scope="session")
def sin6_report(sin6):
    return find_optima(sin6)


# n=3 fitness table with a two-point plateau at the bottom: 000 and 001 are
# both non-strict local optima with equal fitness, so plateau compression
# has something to merge.
PLATEAU_TABLE = [0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0]


@pytest.fixture()
def plateau3():
    from bitscape.problems import FitnessLandscape

    return FitnessLandscape(
        n=3,
        f=lambda b: PLATEAU_TABLE[b.value],
        name="plateau3",
    )
