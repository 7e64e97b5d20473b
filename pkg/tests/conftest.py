import pytest

_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion.

    Usage: ``criterion(7, ok, "detail")``; the line is also printed so it
    shows up with ``-s``, and every recorded line is repeated in the
    terminal summary.
    """
    def record(number, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE.setdefault(number, []).append((request.node.name, line))
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        for name, line in _ACCEPTANCE[number]:
            terminalreporter.write_line(f"{line}  [{name}]")
