import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    n = getattr(getattr(item, "function", None), "criterion", None)
    if n is None:
        return
    desc = item.function.criterion_desc
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[n] = (desc, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        desc, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {desc}")
