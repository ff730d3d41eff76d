import pytest

# one line per acceptance criterion, printed again in the terminal summary
CRITERIA_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = getattr(getattr(item, "function", None), "criterion_label", None)
    if label is None or report.when != "call":
        return
    verdict = "PASS" if report.passed else "FAIL"
    line = f"{verdict} criterion {label[0]}: {label[1]} ({report.duration:.2f}s)"
    CRITERIA_LINES.append(line)
    print(line)
