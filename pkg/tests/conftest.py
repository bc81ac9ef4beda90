"""Shared pytest plumbing: the acceptance tests record one line per
criterion, echoed in the terminal summary regardless of output capture."""

_ACCEPTANCE_LINES = []


def record_acceptance_line(line: str):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
