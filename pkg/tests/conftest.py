import os
import sys

# make the shared hypothesis strategies in test_graph importable from sibling modules
sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE: list[tuple[str, str, list[str]]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, status, lines in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{crit}: {status}")
        for line in lines:
            terminalreporter.write_line(f"    {line}")
