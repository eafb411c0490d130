import pytest

from artifact.algebra import AlgebraKind, chain, make_algebra
from artifact.harness import catalog


@pytest.fixture(scope="session")
def cat3():
    return catalog(3)


@pytest.fixture(scope="session")
def cat2():
    return [A for A in catalog(3) if A.n <= 2]


@pytest.fixture(scope="session")
def semigroups3():
    return catalog(3, AlgebraKind("posemigroup"))


@pytest.fixture
def chain2():
    """0 < 1, product is min, unit 1."""
    return chain(2)


@pytest.fixture
def trivial():
    return make_algebra(1, [], [[0]], 0, [[0]], name="T")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
