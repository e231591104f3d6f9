"""Shared engines and KL contexts; building them once keeps the suite fast."""

import pytest

from coxkl.coxeter import build_group
from coxkl.kl import KLContext


@pytest.fixture(scope="session")
def a2():
    return build_group("A2")


@pytest.fixture(scope="session")
def a3():
    return build_group("A3")


@pytest.fixture(scope="session")
def b3():
    return build_group("B3")


@pytest.fixture(scope="session")
def b3w():
    return build_group("B3:2,1,1")


@pytest.fixture(scope="session")
def kl_a2(a2):
    return KLContext(a2)


@pytest.fixture(scope="session")
def kl_a3(a3):
    return KLContext(a3)


@pytest.fixture(scope="session")
def kl_b3(b3):
    return KLContext(b3)


@pytest.fixture(scope="session")
def kl_b3w(b3w):
    return KLContext(b3w)
