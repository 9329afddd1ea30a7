import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from stringcma.fixtures import NAMES, load  # noqa: E402


@pytest.fixture(scope="session")
def fx():
    return {n: load(n) for n in NAMES}


_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    num = int(name.split("_")[2])
    _CRITERIA[num] = (name, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        name, verdict = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  ({name})")
