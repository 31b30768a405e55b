import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# field component values 1, i, sqrt2, i sqrt2, sqrt3, i sqrt3, sqrt6, i sqrt6
COMPONENT_VALUES = np.array([1, 1j, 2 ** 0.5, 1j * 2 ** 0.5, 3 ** 0.5, 1j * 3 ** 0.5, 6 ** 0.5, 1j * 6 ** 0.5])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        RESULTS = mod.RESULTS
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
