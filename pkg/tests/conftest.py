import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from photonic_engine.atoms import PureFamilyParams, build_pure_family
from photonic_engine.reservoir import InteractionParams

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ref_params():
    """g/2pi = 334 kHz, kappa/2pi = 74 kHz, g tau = 0.03, N_pair = 2."""
    return InteractionParams.from_hz(334e3, 74e3, 0.03, n_pair=2.0)


@pytest.fixture
def product_state():
    return build_pure_family(PureFamilyParams(1.0, 1.0, 1.0, 0.0))
