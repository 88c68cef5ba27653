import pytest

from _instances import dirty, flip23

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def ex_flip23():
    return flip23()


@pytest.fixture
def ex_dirty():
    return dirty()


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
