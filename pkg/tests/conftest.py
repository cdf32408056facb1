"""Collects ``criterion`` markers and reports one line per acceptance criterion."""

import pytest

_criteria: dict[int, dict] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, text = mark.args
            _criteria.setdefault(number, {"text": text, "outcomes": []})


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None and (report.when == "call" or report.failed):
        _criteria[mark.args[0]]["outcomes"].append(report.passed)
    return report


def criterion_lines() -> list[str]:
    lines = []
    for number in sorted(_criteria):
        entry = _criteria[number]
        outcomes = entry["outcomes"]
        if not outcomes:
            verdict = "NOT RUN"
        else:
            verdict = "PASS" if all(outcomes) else "FAIL"
        lines.append(f"AC{number} {verdict}: {entry['text']}")
    return lines


def pytest_terminal_summary(terminalreporter):
    lines = criterion_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
