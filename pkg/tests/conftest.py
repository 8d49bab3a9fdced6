import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record a one-line verdict for the acceptance summary."""

    def record(number, title, ok, detail=""):
        ACCEPTANCE_LINES.append((number, f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}"))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES, key=lambda t: t[0]):
        terminalreporter.write_line(line)
