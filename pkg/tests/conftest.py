import os

import pytest
from hypothesis import HealthCheck, settings

from continuum_lab import kernels

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(params=[m.BACKEND for m in kernels.available_backends()])
def backend(request):
    """Each importable kernel module in turn."""
    return next(m for m in kernels.available_backends() if m.BACKEND == request.param)


@pytest.fixture
def data_path():
    return lambda name: os.path.join(DATA, name)


def pytest_terminal_summary(terminalreporter):
    import helpers
    if helpers.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in helpers.ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
