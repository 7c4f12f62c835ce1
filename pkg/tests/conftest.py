import mpmath
import pytest

from sixvertex.core_model import PhaseParams


@pytest.fixture
def canonical():
    return {
        "D": PhaseParams.of("D", "pi/5", "0.1"),
        "AF": PhaseParams.of("AF", "1.2", "0.3"),
        "F": PhaseParams.of("F", "0.5", "1.0"),
    }


def close(a, b, rel=mpmath.mpf(2) ** -100):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
