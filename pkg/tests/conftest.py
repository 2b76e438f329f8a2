import pytest

from dlattice import boolean_algebra, mo, mv_chain


@pytest.fixture(scope="session")
def c2():
    return mv_chain(2)


@pytest.fixture(scope="session")
def b2():
    return boolean_algebra(2)


@pytest.fixture(scope="session")
def b3():
    return boolean_algebra(3)


@pytest.fixture(scope="session")
def mo2():
    return mo(2)


@pytest.fixture(scope="session")
def small_algebras():
    return [mv_chain(1), mv_chain(2), mv_chain(3), boolean_algebra(2),
            boolean_algebra(3), mo(2)]
