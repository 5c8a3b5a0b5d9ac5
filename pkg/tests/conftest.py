import pytest

from blockcurves import gf


@pytest.fixture(scope="session")
def F2():
    return gf.make_field(2, 1)


@pytest.fixture(scope="session")
def F3():
    return gf.make_field(3, 1)


@pytest.fixture(scope="session")
def F4():
    return gf.make_field(2, 2)


@pytest.fixture(scope="session")
def F5():
    return gf.make_field(5, 1)


@pytest.fixture(scope="session")
def F9():
    return gf.make_field(3, 2)
