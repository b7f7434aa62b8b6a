"""Collects acceptance outcomes so the run ends with one line per criterion."""
import pytest

_criteria: dict[str, tuple[int, str]] = {}
_outcomes: dict[int, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria[item.nodeid] = (mark.args[0], mark.args[1])


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    number, _ = _criteria[report.nodeid]
    if report.failed:
        _outcomes[number] = "FAIL"
    elif report.when == "call" and report.passed:
        _outcomes.setdefault(number, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    titles = {n: t for n, t in _criteria.values()}
    for number in sorted(titles):
        status = _outcomes.get(number, "NOT RUN")
        terminalreporter.write_line(f"criterion {number}: {status}  {titles[number]}")
