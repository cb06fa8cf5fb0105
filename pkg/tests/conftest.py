import pytest
from hypothesis import HealthCheck, settings

from asymhecke.core import context

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_TYPES = ["A1", "A2", "A3", "B2", "B3", "G2"]


@pytest.fixture(scope="session")
def ctx():
    return context


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda r: int(r.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)
