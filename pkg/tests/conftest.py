import random

import pytest

from grammic.explorer import grammic_partition, plactic_partition

ACCEPTANCE_LINES = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker.args
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {number:>2} {status}  {title} ({report.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)


_partitions = {}


def cached_partition(relation, n, k):
    key = (relation, n, k)
    if key not in _partitions:
        build = grammic_partition if relation == "grammic" else plactic_partition
        _partitions[key] = build(n, k)
    return _partitions[key]


@pytest.fixture(scope="session")
def partitions():
    return cached_partition
