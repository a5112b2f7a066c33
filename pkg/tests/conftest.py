import pytest

from dynqg.abrr import curly_J, solve_abrr
from dynqg.construction import build_HJ
from dynqg.scalars import LambdaParam
from dynqg.uqg import build_uq


@pytest.fixture(scope="session")
def U3():
    return build_uq("A1", 3)


@pytest.fixture(scope="session")
def U5():
    return build_uq("A1", 5)


@pytest.fixture(scope="session")
def lam2():
    return LambdaParam([2])


@pytest.fixture(scope="session")
def J3(U3, lam2):
    return solve_abrr(U3, lam2)


@pytest.fixture(scope="session")
def JJ3(J3):
    return curly_J(J3)


@pytest.fixture(scope="session")
def tw3(JJ3):
    return build_HJ(JJ3, check=False)
