import pytest

from relfrob.battery import builtin_group
from relfrob.chartable import character_table


@pytest.fixture(scope="session")
def group():
    def get(name):
        return builtin_group(name)
    return get


@pytest.fixture(scope="session")
def table():
    def get(name):
        return character_table(builtin_group(name)[0])
    return get


@pytest.fixture(scope="session")
def s3():
    G, X = builtin_group("S3")
    return G, X, character_table(G)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
