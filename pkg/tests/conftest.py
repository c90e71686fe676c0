import pytest

from klec.algebra import build_field


@pytest.fixture(scope="session")
def F3():
    return build_field(3, 1)


@pytest.fixture(scope="session")
def F5():
    return build_field(5, 1)


@pytest.fixture(scope="session")
def F7():
    return build_field(7, 1)


@pytest.fixture(scope="session")
def F9():
    return build_field(3, 2)
