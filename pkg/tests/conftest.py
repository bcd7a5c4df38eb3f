import pytest

from superjordan.algebra import find_unit
from superjordan.catalog import from_name, sweep_entries
from superjordan.decomposition import even_part_positive


SWEEP = sweep_entries()
POSITIVE_UNITAL = [e for e in SWEEP if find_unit(e.algebra) is not None and even_part_positive(e.algebra)]


@pytest.fixture(scope="session")
def dt2():
    return from_name("dt(2)")


def entry_ids(entries):
    return [e.name for e in entries]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
