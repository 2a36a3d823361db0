import pytest

from preprojective import Gamma


@pytest.fixture(scope="session")
def A2():
    return Gamma("A2")


@pytest.fixture(scope="session")
def A3():
    return Gamma("A3")


@pytest.fixture(scope="session")
def D4():
    return Gamma("D4")
