import pytest

from ratbase import new_base

TEST_BASES = [(3, 2), (4, 3), (5, 2), (5, 3), (7, 3), (7, 4), (10, 3)]

_ACCEPTANCE = []


@pytest.fixture(params=TEST_BASES, ids=[f"{p}/{q}" for p, q in TEST_BASES])
def base(request):
    return new_base(*request.param)


@pytest.fixture
def criterion():
    """Record one acceptance line; printed again in the terminal summary."""

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        print(line)
        _ACCEPTANCE.append((number, line))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _n, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
