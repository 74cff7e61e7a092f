import pytest
from hypothesis import HealthCheck, settings

from fflat import GF

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# one pass/fail line per acceptance criterion, printed at the end of the
# run; tests in test_acceptance.py add detail strings keyed by test name
ACCEPTANCE_DETAIL: dict = {}
_ACCEPTANCE_RESULTS: list = []


@pytest.fixture(scope="session")
def F2():
    return GF(2)


@pytest.fixture(scope="session")
def F3():
    return GF(3)


@pytest.fixture(scope="session")
def F4():
    return GF(2, 2, (1, 1, 1))


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _ACCEPTANCE_RESULTS.append((name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    width = max(len(n) for n, _ in _ACCEPTANCE_RESULTS)
    for name, ok in _ACCEPTANCE_RESULTS:
        mark = "PASS" if ok else "FAIL"
        detail = ACCEPTANCE_DETAIL.get(name, "")
        line = f"{mark}  {name.ljust(width)}"
        terminalreporter.write_line(line + (f"  {detail}" if detail else ""))
