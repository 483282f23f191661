import sys


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines, in criterion order, after the run."""
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
