import re

_CRITERIA: dict[int, tuple[str, str]] = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    match = _PATTERN.search(report.nodeid)
    if not match:
        return
    number, label = int(match.group(1)), match.group(2).replace("_", " ")
    failed = report.failed or (report.when == "call" and report.skipped)
    previous = _CRITERIA.get(number, (label, "PASS"))[1]
    _CRITERIA[number] = (label, "FAIL" if failed or previous == "FAIL" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        label, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number} ({label}): {status}")
