import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed or report.skipped:
        if report.failed:
            _CRITERIA[key] = "FAIL"
        elif report.skipped:
            _CRITERIA[key] = "SKIP"
        else:
            _CRITERIA.setdefault(key, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcome in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {num:2d} {name.replace('_', ' '):<40} {outcome}")
