from __future__ import annotations

import pytest

from primeapprox import primes, sequences

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def table():
    return primes.get_table()


@pytest.fixture(scope="session")
def greedy5(table):
    return sequences.greedy_sequence(5, table)


@pytest.fixture(scope="session")
def greedy_1e6(table):
    return sequences.greedy_prefix(10 ** 6, table)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
