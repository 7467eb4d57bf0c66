import pytest

from derhall.dcat import DerivedCategory
from derhall.objects import DObject, universe
from derhall.quiver import linear_quiver

S = DObject.single(1, 1)


@pytest.fixture(scope="session")
def a1():
    return linear_quiver(1)


@pytest.fixture(scope="session")
def a2():
    return linear_quiver(2)


@pytest.fixture(scope="session")
def cat1(a1):
    return DerivedCategory(a1, 2)


@pytest.fixture(scope="session")
def cat2(a2):
    return DerivedCategory(a2, 2)


@pytest.fixture(scope="session")
def u1(a1):
    return universe(a1, 1, 2)


@pytest.fixture(scope="session")
def u2(a2):
    return universe(a2, 1, 2)
