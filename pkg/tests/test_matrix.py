from __future__ import annotations

import random

import pytest

from conftest import sympy_minor
from fracfree.errors import NoValidPivot, RingMismatch
from fracfree.matrix import (
    AugmentedMatrix,
    corner_minor,
    minor_oracle,
    permutation_sign,
    pivot_permute,
    random_system,
    substituted_minor,
    substitution_identity_check,
)
from fracfree.rings import IntegerRing, PrimeField


def test_shape_validation():
    with pytest.raises(ValueError):
        AugmentedMatrix.from_ints([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        AugmentedMatrix.from_ints([[1, 2, 3], [3, 4]])
    with pytest.raises(RingMismatch):
        AugmentedMatrix(PrimeField(7), ((1, 9),))


def test_oracle_examples(small, vander):
    I = AugmentedMatrix.from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    assert minor_oracle(I, [1, 2, 3], [1, 2, 3]) == 1
    assert minor_oracle(vander, [1, 2, 3], [1, 2, 3]) == 2
    assert minor_oracle(small, [1, 2], [3, 2]) == -3
    with pytest.raises(ValueError):
        minor_oracle(small, [1, 2], [1])


def test_oracle_matches_sympy(rng):
    for _ in range(200):
        k = rng.randint(1, 6)
        A = random_system(rng, k, k + 2, regular=False)
        cols = rng.sample(range(1, k + 3), k)
        assert minor_oracle(A, list(range(1, k + 1)), cols) == sympy_minor(A.rows, range(1, k + 1), cols)


def test_pivot_examples(vander):
    A = AugmentedMatrix.from_ints([[0, 1, 2], [1, 0, 1]])
    pv = pivot_permute(A)
    assert pv.matrix.tolist() == [[1, 0, 1], [0, 1, 2]]
    assert pv.sign == -1
    pv = pivot_permute(vander)
    assert pv.perm == (0, 1, 2) and pv.sign == 1
    with pytest.raises(NoValidPivot):
        pivot_permute(AugmentedMatrix.from_ints([[0, 0, 1], [0, 0, 2]]))


def test_pivoting_makes_every_corner_minor_nonzero(rng):
    for _ in range(200):
        n = rng.randint(2, 6)
        rows = [[rng.choice([0, 0, 1, -1, 2]) for _ in range(n + 1)] for _ in range(n)]
        A = AugmentedMatrix.from_ints(rows)
        full = minor_oracle(A, range(1, n + 1), range(1, n + 1))
        try:
            pv = pivot_permute(A)
        except NoValidPivot:
            assert full == 0
            continue
        assert all(corner_minor(pv.matrix, k) != 0 for k in range(1, n + 1))
        assert corner_minor(pv.matrix, n) == pv.sign * full


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1


def test_identity_example():
    A = AugmentedMatrix.from_ints([[1, 2, 3, 4], [5, 6, 7, 8]])
    assert corner_minor(A, 2) * substituted_minor(A, 2, (1, 3), (2, 4)) == 16
    assert substitution_identity_check(A, 2, 1, 3, 2, 4)


def test_identity_preconditions():
    A = AugmentedMatrix.from_ints([[1, 2, 3, 4], [5, 6, 7, 8]])
    with pytest.raises(ValueError):
        substitution_identity_check(A, 2, 1, 3, 2, 3)  # t == j
    with pytest.raises(ValueError):
        substitution_identity_check(A, 2, 1, 3, 1, 4)  # s == i


def test_random_system_is_regular_and_seeded():
    a = random_system(random.Random(3), 4, 6)
    b = random_system(random.Random(3), 4, 6)
    assert a == b
    pivot_permute(a)
    assert a.ring == IntegerRing()
