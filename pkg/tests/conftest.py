"""Shared pytest hooks.

The acceptance tests record one line per criterion; echo them in the
terminal summary so the report is visible even when every test passes
(per-test stdout is only shown for failures).
"""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.line(line)
