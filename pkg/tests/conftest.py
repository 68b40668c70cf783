import pytest

ACCEPTANCE_KEY = pytest.StashKey()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion(request):
    """Record one pass/fail line per acceptance criterion, then assert it."""

    def _record(number, name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number:2d} [{name}]: {status}" + (f" -- {detail}" if detail else "")
        print(line)
        request.config.stash[ACCEPTANCE_KEY].append(line)
        assert ok, line

    return _record
