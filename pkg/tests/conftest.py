import pytest

_acceptance = {}


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(report.nodeid.split(marker)[1].split("_")[0])
        _acceptance[num] = (report.outcome, report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        outcome, name = _acceptance[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {name}")


@pytest.fixture
def budget():
    """Assert a wall-clock limit (seconds) on the body of a with-block."""
    import time
    from contextlib import contextmanager

    @contextmanager
    def limit(seconds):
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < seconds, f"took {elapsed:.1f}s, budget {seconds}s"

    return limit
