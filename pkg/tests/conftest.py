import random

import pytest
from hypothesis import HealthCheck, settings

from zkqap import testing
from zkqap.algebra import Field
from zkqap.circuit import compile_source
from zkqap.qap import build_qap

testing.enable()

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CALC = """
def calc(pub w, a, b) -> v {
    m = a * b;
    v = w * (m - a - b) + a + b;
    assert_bool(w);
}
"""


@pytest.fixture
def small():
    return Field(7)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def calc():
    return compile_source(CALC)


@pytest.fixture(scope="session")
def calc_qap(calc):
    return build_qap(calc.r1cs)


ACCEPTANCE: list[str] = []


@pytest.fixture
def report(capsys):
    """Record one pass/fail line for an acceptance criterion, then assert it."""

    def emit(label: str, ok: bool, detail: str):
        line = f"{label}: {'PASS' if ok else 'FAIL'} ({detail})"
        ACCEPTANCE.append(line)
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
