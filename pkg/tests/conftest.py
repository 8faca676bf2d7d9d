from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import HealthCheck, settings

from fracfree.matrix import AugmentedMatrix

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


SMALL_ROWS = [[1, 2, 3], [4, 5, 9]]
VANDER_ROWS = [[1, 1, 1, 6], [1, 2, 3, 14], [1, 4, 9, 36]]


@pytest.fixture
def small() -> AugmentedMatrix:
    return AugmentedMatrix.from_ints(SMALL_ROWS)


@pytest.fixture
def vander() -> AugmentedMatrix:
    return AugmentedMatrix.from_ints(VANDER_ROWS)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def sympy_minor(rows, row_idx, col_idx) -> int:
    """Independent determinant (sympy, Bareiss-free Berkowitz) on 1-based indices."""
    M = sympy.Matrix([[rows[i - 1][j - 1] for j in col_idx] for i in row_idx])
    return int(M.det(method="berkowitz"))


def sympy_table(rows) -> tuple[int, list[list[int]]]:
    """(delta^n, delta^n_ij) computed from scratch with sympy."""
    n, m = len(rows), len(rows[0])
    base = list(range(1, n + 1))
    delta = sympy_minor(rows, base, base)
    minors = []
    for i in range(1, n + 1):
        row = []
        for j in range(n + 1, m + 1):
            cols = list(base)
            cols[i - 1] = j
            row.append(sympy_minor(rows, base, cols))
        minors.append(row)
    return delta, minors


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
