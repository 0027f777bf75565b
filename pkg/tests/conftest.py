import pytest

_REPORT = {}


@pytest.fixture
def criterion():
    """Record ``(number, passed, text)`` for the acceptance summary."""
    def record(num, ok, text):
        prev = _REPORT.get(num)
        _REPORT[num] = (bool(ok) and (prev is None or prev[0]),
                        text if prev is None else prev[1] + "; " + text)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_REPORT):
        ok, text = _REPORT[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} | {text}")
