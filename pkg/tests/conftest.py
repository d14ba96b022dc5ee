import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    n, title = mark.args
    notes = [v for k, v in item.user_properties if k == "note"]
    prev = _RESULTS.get(n)
    passed = report.passed and (prev is None or prev[1])
    _RESULTS[n] = (title, passed, notes or (prev[2] if prev else []))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, passed, notes = _RESULTS[n]
        tr.write_line(f"AC{n:<2} {'PASS' if passed else 'FAIL'}  {title}")
        for note in notes:
            tr.write_line(f"      {note}")


@pytest.fixture
def note(request):
    """Attach a line of reported (not asserted) output to the current test."""
    def add(text):
        request.node.user_properties.append(("note", text))
    return add
