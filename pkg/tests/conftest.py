import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    monkeypatch.setenv("MODCOLOR_NUMBA", "1" if request.param == "numba" else "0")
    return request.param


@pytest.fixture
def acceptance(request):
    """Record ``(criterion, ok, detail)`` for the end-of-run summary."""
    store = request.config.__dict__.setdefault("_acceptance", [])

    def record(name, ok, detail):
        store.append((name, ok, detail))
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.__dict__.get("_acceptance")
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(rows, key=lambda r: int(r[0].split()[0][2:])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
