import math

import pytest

from flexjoint import JointParams
from flexjoint.config import DEFAULT_CONFIG_TEXT, parse_config

# Reference joint: r=20.24 mm, d=27.68 mm, K=81 N/m, I=3.1e-5 kg m^2,
# zeta*I=2.2e-4 N m s, Q0*I=1e-4 N m.
REF_Q0 = 1e-4 / 3.1e-5
REF_ZETA = 2.2e-4 / 3.1e-5


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def record_criterion():
    """Collects one pass/fail line per acceptance criterion; the lines are
    echoed in the terminal summary."""
    def rec(number: int, description: str, ok: bool):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {description}"
        _ACCEPTANCE_LINES.append(line)
        assert ok, line
    return rec


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ref_config():
    return parse_config(DEFAULT_CONFIG_TEXT)


@pytest.fixture(scope="session")
def joint(ref_config) -> JointParams:
    return ref_config.joint


@pytest.fixture(scope="session")
def q0(ref_config) -> float:
    return ref_config.Q0


def hz(f: float) -> float:
    return 2.0 * math.pi * f
