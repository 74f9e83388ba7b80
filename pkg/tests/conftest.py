"""Collects one line per acceptance criterion and prints them at the end of the run."""

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    def add(number: int, ok: bool, detail: str):
        ACCEPTANCE_LINES.append((number, f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"))
        return ok

    return add


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES, key=lambda t: t[0]):
        terminalreporter.write_line(line)
