import pytest

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    # a setup error also counts as a failed criterion
    if marker is not None and (report.when == "call" or report.failed):
        number, title = marker.args
        seconds = dict(item.user_properties).get("seconds")
        _RESULTS[number] = (report.passed, title, seconds)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        passed, title, seconds = _RESULTS[number]
        timing = f"  ({seconds:.2f}s)" if seconds is not None else ""
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {number}. {title}{timing}")
