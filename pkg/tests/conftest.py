import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qmonogamy.qstate import PureState

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def states(n_qubits):
    """Hypothesis strategy for random normalized states on ``n_qubits`` qubits."""
    size = 2**n_qubits
    comp = st.floats(-1, 1, allow_nan=False, allow_infinity=False)
    return (st.lists(st.tuples(comp, comp), min_size=size, max_size=size)
            .map(lambda pairs: np.array([complex(a, b) for a, b in pairs]))
            .filter(lambda v: np.linalg.norm(v) > 1e-3)
            .map(PureState))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
