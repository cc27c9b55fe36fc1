from __future__ import annotations

import re
import sys
import warnings
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from sbbcodes.torus import SelfOverlapWarning  # noqa: E402

warnings.simplefilter("ignore", SelfOverlapWarning)

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _quiet_overlap():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SelfOverlapWarning)
        yield


_CRITERIA: dict[int, list[tuple[str, str, str]]] = {}
_CRITERION_RE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    match = _CRITERION_RE.search(report.nodeid)
    if not match:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        reason = ""
        if report.skipped and isinstance(report.longrepr, tuple):
            reason = report.longrepr[2]
        _CRITERIA.setdefault(int(match.group(1)), []).append((report.nodeid, report.outcome, reason))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outcomes = [o for _, o, _ in _CRITERIA[n]]
        passed, failed, skipped = (outcomes.count(k) for k in ("passed", "failed", "skipped"))
        if failed:
            status = f"FAIL ({failed} failed, {passed} passed)"
        elif skipped:
            reasons = sorted({r for _, o, r in _CRITERIA[n] if o == "skipped"})
            status = f"NOT RUN IN FULL ({passed} passed, {skipped} not run: {'; '.join(reasons)})"
        else:
            status = f"PASS ({passed} checks)"
        terminalreporter.write_line(f"criterion {n}: {status}")
