from pathlib import Path

import pytest

from hyperfact.hf import read_hf

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def intro6():
    """The ten-class 1-factorization of the 3-subsets of [6]."""
    return read_hf(FIXTURES / "intro6.hf")


@pytest.fixture
def partial9():
    return read_hf(FIXTURES / "partial9.hf")


@pytest.fixture
def full9():
    return read_hf(FIXTURES / "full9.hf")


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collects one pass/fail line per acceptance criterion."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines):
        terminalreporter.write_line(line)
