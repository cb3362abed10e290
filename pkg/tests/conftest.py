import os
import re
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and rep.when == "call" or (m and outcome == "error"):
                key = (int(m.group(1)), m.group(2))
                prev = results.get(key, "PASS")
                results[key] = "PASS" if outcome == "passed" and prev == "PASS" else "FAIL"
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(results.items()):
        terminalreporter.write_line(f"criterion {num} {name.replace('_', ' ')}: {verdict}")
