import pytest

from levelfair import counterexample_instance


@pytest.fixture
def ten_items():
    """Three identical agents; items 0-2 worth 9, items 3-9 worth 7."""
    return counterexample_instance(7, 9)


_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid:
        if report.when == "call" or report.failed:
            _criteria[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, duration) in sorted(_criteria.items()):
        name = nodeid.split("::test_")[-1]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {name} ({duration:.1f}s)")
