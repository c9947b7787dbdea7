from pathlib import Path

import pytest

from hyperprob import context_stats, hyp8, represent
from hyperprob.generators import random_corpus

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def space8():
    return hyp8()


@pytest.fixture(scope="session")
def stats_c(space8):
    return context_stats(space8, "C")


@pytest.fixture(scope="session")
def rep_c(stats_c):
    return represent(stats_c)


@pytest.fixture(scope="session")
def mixed_corpus():
    return random_corpus(20240101, 1000)


@pytest.fixture(scope="session")
def ds_corpus():
    return random_corpus(20240202, 1500, double_stochastic=True)


@pytest.fixture(scope="session")
def nonds_corpus():
    return random_corpus(20240303, 1000, double_stochastic=False)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
