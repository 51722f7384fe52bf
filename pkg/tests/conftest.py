import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dexlift import MaterialSpec  # noqa: E402

_ACCEPTANCE = []


@pytest.fixture
def demo():
    return MaterialSpec(1.0, 1.0, 0.2, label="demo")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE.append((marker.args[0], report.passed, item.function.__doc__ or item.name))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, doc in sorted(_ACCEPTANCE):
        title = doc.strip().splitlines()[0]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}")
