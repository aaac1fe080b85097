import pytest

from rotmorse.core import TABLE_MOLECULES, builtin_molecule

MOLECULES = tuple(TABLE_MOLECULES.values())
TABLE_STATES = [(n, l) for n in (0, 5, 7) for l in (0, 5, 10)]


@pytest.fixture(scope="session")
def h2():
    return builtin_molecule("H2")


@pytest.fixture(scope="session", params=MOLECULES)
def molecule(request):
    return builtin_molecule(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
