from fractions import Fraction

import numpy as np
import pytest

from twistinv.screw import Twist


@pytest.fixture
def worked_triple():
    return [
        Twist([1, 0, 0], [1, 0, 0]),
        Twist([1, 1, 0], [0, 1, 0]),
        Twist([1, 1, 1], [0, 0, 1]),
    ]


@pytest.fixture
def worked_triple_exact(worked_triple):
    return [Twist([Fraction(int(x)) for x in s.omega], [Fraction(int(x)) for x in s.v]) for s in worked_triple]


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def rel_close(a, b, rtol=1e-9, atol=1e-12):
    a, b = float(a), float(b)
    return abs(a - b) <= max(atol, rtol * max(abs(a), abs(b)))


ACCEPTANCE_LINES = []


@pytest.fixture
def report_criterion():
    """Record one PASS/FAIL line; the lines are echoed in the terminal summary."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
