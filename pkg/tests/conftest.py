import numpy as np
import pytest

_ACCEPTANCE_LINES = []


def random_spd(rng, n, shift=0.5):
    """Random 2n x 2n symmetric positive definite matrix with eigenvalues >= shift."""
    A = rng.normal(size=(2 * n, 2 * n))
    return A @ A.T / (2 * n) + shift * np.eye(2 * n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def record():
    """Collect one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def _record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
