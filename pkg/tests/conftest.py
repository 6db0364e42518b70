import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


finite = st.floats(min_value=-2, max_value=2, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def coeff_lists(min_size=1, max_size=8):
    return st.lists(complexes, min_size=min_size, max_size=max_size)
