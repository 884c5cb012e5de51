import pytest

from holderopt import AlgoParams, constant, holder_norm, optimize


@pytest.fixture(scope="session")
def constant_traces():
    """Constant-zero runs with C0 = 1, keyed by dimension."""
    return {n: optimize(constant(n), AlgoParams.explicit(n, 255, 1.0)) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def holder_trace_2d():
    obj = holder_norm(2, 1.0, 0.5, (0.3, 0.65))
    return obj, optimize(obj, AlgoParams.minimax(2, 512, 1.0, 1.0, 0.5))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
