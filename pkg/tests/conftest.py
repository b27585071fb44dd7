import pathlib

import pytest

from totcomp.field import GF, QQ
from totcomp.poset import Poset

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def y6():
    """Six-element poset: 1 < 2 < {3 < 5, 4 < 6}."""
    return Poset.from_hasse(6, [(1, 2), (2, 3), (3, 5), (2, 4), (4, 6)])


@pytest.fixture(scope="session")
def y5():
    """Five-element poset: 1 < 2 < {3 < 5, 4}."""
    return Poset.from_hasse(5, [(1, 2), (2, 3), (3, 5), (2, 4)])


@pytest.fixture(scope="session")
def y4():
    """Four-element poset: 1 < 2 < {3, 4}."""
    return Poset.from_hasse(4, [(1, 2), (2, 3), (2, 4)])


@pytest.fixture(scope="session")
def chain3():
    return Poset.from_hasse(3, [(1, 2), (2, 3)])


@pytest.fixture(scope="session")
def chain4():
    return Poset.from_hasse(4, [(1, 2), (2, 3), (3, 4)])


@pytest.fixture(scope="session")
def antichain3():
    return Poset.from_hasse(3, [])


@pytest.fixture(scope="session")
def gf2():
    return GF(2)


@pytest.fixture(scope="session")
def gf3():
    return GF(3)


@pytest.fixture(scope="session")
def gf5():
    return GF(5)


@pytest.fixture(scope="session")
def rationals():
    return QQ
