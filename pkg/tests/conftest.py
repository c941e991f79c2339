from __future__ import annotations

import pytest

# criterion number -> (description, statuses of every test tagged with it)
_CRITERIA: dict[int, tuple[str, list[bool]]] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and not report.passed):
        props = dict(report.user_properties)
        if "criterion" in props:
            num, text = props["criterion"]
            _CRITERIA.setdefault(num, (text, []))[1].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        text, results = _CRITERIA[num]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {text}  [{sum(results)}/{len(results)} tests]")


@pytest.fixture
def criterion(record_property):
    """Tag an acceptance test; the summary prints one PASS/FAIL line per criterion."""

    def tag(num: int, text: str) -> None:
        record_property("criterion", (num, text))

    return tag
