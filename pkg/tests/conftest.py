from __future__ import annotations


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdicts after the run, one line each."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number].line())
