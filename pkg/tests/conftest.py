import os
import re
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: end-to-end acceptance criteria")


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, failing if any parametrized case failed."""
    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m or getattr(rep, "when", "call") not in ("call", "setup"):
                continue
            key = (int(m.group(1)), m.group(2))
            ok = outcome == "passed"
            verdicts[key] = verdicts.get(key, True) and ok
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), ok in sorted(verdicts.items()):
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name.replace('_', ' ')}")
