import pytest

_OUTCOMES: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    key, title = marker.args
    _OUTCOMES[key] = ("PASS" if report.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_OUTCOMES, key=lambda k: int(k[1:])):
        status, title = _OUTCOMES[key]
        terminalreporter.write_line(f"{key} {status}  {title}")
