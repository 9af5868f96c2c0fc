import pytest

from spectrakit import acceptance

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_results():
    """Every acceptance check, run once in order so that the solver-honesty
    check sees the SDP instances produced by the earlier ones."""
    results = acceptance.run_all()
    return {r.key: r for r in results}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
