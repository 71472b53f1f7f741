import contextlib

import pytest

from _helpers import TRIANGLE, SQUARE

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def tri():
    return TRIANGLE.copy()


@pytest.fixture
def square():
    return SQUARE.copy()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    log = request.config.stash[_ACCEPTANCE]

    @contextlib.contextmanager
    def record(label):
        try:
            yield
        except BaseException:
            log.append(f"FAIL  {label}")
            raise
        log.append(f"PASS  {label}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE, [])
    if log:
        terminalreporter.section("acceptance criteria")
        for line in log:
            terminalreporter.write_line(line)
