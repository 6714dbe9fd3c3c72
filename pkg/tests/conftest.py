import pytest

ACCEPTANCE_LINES: list = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
