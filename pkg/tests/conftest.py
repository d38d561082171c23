import pytest

_ACCEPTANCE: list[tuple[str, str, float]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.get_closest_marker("acceptance") is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = item.get_closest_marker("acceptance").args[0]
        if hasattr(report, "wasxfail"):
            status = "FAIL (expected, see notes)" if report.outcome == "skipped" else "PASS (unexpected)"
        else:
            status = "PASS" if report.outcome == "passed" else "FAIL"
        _ACCEPTANCE.append((label, status, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, seconds in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{label:<64} {status:<27} {seconds:7.2f}s")
