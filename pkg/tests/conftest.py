import pytest

ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance(capsys):
    """``record(n, passed, detail)`` prints and stores one criterion line."""

    def record(n, passed, detail=""):
        line = f"criterion {n:>2}: {'PASS' if passed else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES[n] = line
        with capsys.disabled():
            print("\n" + line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
