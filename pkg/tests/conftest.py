import pytest

# one line per acceptance criterion, filled in by test_acceptance
CRITERIA_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        CRITERIA_LINES.append(line)
        print(line)
        assert ok, line
    return record
