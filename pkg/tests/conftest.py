import pytest

_RESULTS: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or report.failed or report.skipped:
        status = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
        _, _, previous = _RESULTS.get(number, ("", "", 0.0))
        if status != "PASS" or number not in _RESULTS:
            _RESULTS[number] = (status, title, previous + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title, seconds = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:>2}  {status}  {title}  ({seconds:.2f} s)")
