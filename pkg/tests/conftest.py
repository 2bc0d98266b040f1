"""Collects the acceptance criteria outcomes and prints one line per criterion."""

import pytest

_results: dict[int, list] = {}
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args))


@pytest.hookimpl
def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    number, title = crit
    _titles[number] = title
    if report.when == "call" or (report.when == "setup" and not report.passed):
        if hasattr(report, "wasxfail"):
            outcome = "xfail"
        else:
            outcome = report.outcome
        _results.setdefault(number, []).append((report.nodeid.split("::")[-1], outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        checks = _results[number]
        ok = all(outcome == "passed" for _, outcome, _ in checks)
        seconds = sum(d for _, _, d in checks)
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {_titles[number]}  ({seconds:.1f} s)"
        tr.write_line(line)
        for name, outcome, _ in checks:
            if outcome != "passed":
                tr.write_line(f"    {name}: {outcome}")
