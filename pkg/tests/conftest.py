import numpy as np
import pytest

from fracdim.surface import UNIT_SQUARE, GridSpec, sample_function

_criteria = []


@pytest.fixture
def criterion():
    """Record one acceptance line and fail the test if it did not hold."""

    def record(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
        _criteria.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)


def sine_mixture(seed, n=257, terms=3):
    """Deterministic smooth test surface: a few oblique sine waves."""
    rng = np.random.default_rng(seed)
    amp = rng.uniform(0.2, 2.0, terms)
    fx = rng.integers(-8, 9, terms)
    fy = rng.integers(-8, 9, terms)
    phase = rng.uniform(0, 2 * np.pi, terms)

    def fn(x, y):
        out = 0.0
        for a, p, q, ph in zip(amp, fx, fy, phase):
            out = out + a * np.sin(2 * np.pi * (p * x + q * y) + ph)
        return out

    return sample_function(fn, UNIT_SQUARE, GridSpec(n, n))


@pytest.fixture
def plane():
    def make(n=33, m=None):
        return sample_function(lambda x, y: x + y, UNIT_SQUARE, GridSpec(n, m or n))

    return make
