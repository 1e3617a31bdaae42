import random

import pytest

from wsnsim.model import HeterogeneityParams, RadioParams, SimConfig, deploy


@pytest.fixture
def radio():
    return RadioParams()


@pytest.fixture
def default_hetero():
    return HeterogeneityParams(m=0.2, m0=0.1, a=2.0, b=3.0, e0=0.5)


@pytest.fixture
def small_config():
    # small field/population so full runs finish in well under a second
    return SimConfig(n=20, max_rounds=200, seed=3)


@pytest.fixture
def deployed():
    """A frozen 30-node network plus the rng that placed it."""
    config = SimConfig(n=30, seed=11)
    rng = random.Random(config.seed)
    return config, deploy(config, rng)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # acceptance tests register one line per criterion; echo them at the end
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "CRITERION_LINES", []) if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
