from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# acceptance verdict lines, replayed after the run since output is captured
VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda v: int(v[7:9])):
            terminalreporter.write_line(line)


def rationals(max_num=9, max_den=4):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def rational_matrices(n, max_num=5, max_den=3):
    row = st.lists(rationals(max_num, max_den), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n)


@pytest.fixture
def F():
    return Fraction
