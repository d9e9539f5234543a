import json
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def schemas():
    out = {}
    for path in (ROOT / "docs" / "schemas").glob("*.schema.json"):
        out[path.name.split(".")[0]] = json.loads(path.read_text())
    return out


ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    """Record one PASS/FAIL line; the lines are printed in the terminal summary."""
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append((number, f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"))
        print(ACCEPTANCE_LINES[-1][1])
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
