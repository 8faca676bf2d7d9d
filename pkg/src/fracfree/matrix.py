"""Augmented matrices, the Laplace-expansion minor oracle and row pivoting."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Sequence

from .errors import NoValidPivot, RingMismatch
from .rings import IntegerRing, Ring

MAX_ORACLE_ORDER = 8


@dataclass(frozen=True)
class AugmentedMatrix:
    """The n x m extended coefficient matrix (coefficients, then free members).

    The last column holds the free members; columns n+1..m-1 belong to the
    free unknowns of an underdetermined system.
    """

    ring: Ring
    rows: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("matrix needs at least one row")
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ValueError("rows have different lengths")
        if len(rows) >= m:
            raise ValueError(f"need n < m, got {len(rows)}x{m}")
        base = self.ring.base
        for r in rows:
            for v in r:
                base.check(v)

    @classmethod
    def from_ints(cls, rows: Sequence[Sequence[int]], ring: Ring | None = None) -> AugmentedMatrix:
        ring = ring or IntegerRing()
        return cls(ring, tuple(tuple(ring.from_int(v) for v in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int):
        """1-based access a_ij."""
        return self.rows[i - 1][j - 1]

    def with_ring(self, ring: Ring) -> AugmentedMatrix:
        """Same entries seen through another view of the same ring (e.g. counting)."""
        if ring.base != self.ring.base:
            raise RingMismatch(f"{ring!r} is not a view of {self.ring!r}")
        return AugmentedMatrix(ring, self.rows)

    def reduce(self, ring: Ring) -> AugmentedMatrix:
        """Image of an integer matrix in another ring (e.g. a prime field)."""
        if not isinstance(self.ring.base, IntegerRing):
            raise RingMismatch("only integer matrices can be reduced")
        return AugmentedMatrix(ring, tuple(tuple(ring.from_int(v) for v in r) for r in self.rows))

    def permuted(self, perm: Sequence[int]) -> AugmentedMatrix:
        """Rows reordered so that new row k is old row perm[k] (0-based)."""
        return AugmentedMatrix(self.ring, tuple(self.rows[p] for p in perm))

    def tolist(self) -> list[list[Any]]:
        return [list(r) for r in self.rows]


def _det(ring: Ring, mat: list[list[Any]]):
    k = len(mat)

    @lru_cache(maxsize=None)
    def expand(r: int, cols: tuple[int, ...]):
        if r == k:
            return ring.one()
        total = ring.zero()
        for pos, c in enumerate(cols):
            if ring.is_zero(mat[r][c]):
                continue
            term = ring.mul(mat[r][c], expand(r + 1, cols[:pos] + cols[pos + 1:]))
            total = ring.add(total, term) if pos % 2 == 0 else ring.sub(total, term)
        return total

    return expand(0, tuple(range(k)))


def minor_oracle(A: AugmentedMatrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the sub-matrix on the given 1-based rows and columns.

    Column order matters: ``cols=(3, 2)`` is the minor whose first column is
    column 3.  Computed by Laplace expansion along the first row (memoized on
    the remaining column set), uncounted, independent of every solver.
    """
    if len(rows) != len(cols):
        raise ValueError("minor selection is not square")
    if len(rows) > MAX_ORACLE_ORDER:
        raise ValueError(f"oracle supports order <= {MAX_ORACLE_ORDER}")
    sub = [[A.rows[i - 1][j - 1] for j in cols] for i in rows]
    return _det(A.ring.base, sub)


def corner_minor(A: AugmentedMatrix, k: int):
    """delta^k: the leading k x k coefficient minor."""
    idx = list(range(1, k + 1))
    return minor_oracle(A, idx, idx)


def substituted_columns(k: int, *subs: tuple[int, int]) -> list[int]:
    """Columns 1..k with column s replaced by column t for every (s, t)."""
    cols = list(range(1, k + 1))
    for s, t in subs:
        cols[s - 1] = t
    return cols


def substituted_minor(A: AugmentedMatrix, k: int, *subs: tuple[int, int]):
    """delta^k_{s t; i j ...} evaluated by the oracle on rows 1..k."""
    return minor_oracle(A, list(range(1, k + 1)), substituted_columns(k, *subs))


def substitution_identity_check(A: AugmentedMatrix, k: int, s: int, t: int, i: int, j: int) -> bool:
    """Both sides of the two-column substitution identity, compared.

    delta^k * delta^k_{st;ij} == delta^k_{st} * delta^k_{ij} - delta^k_{sj} * delta^k_{it}
    """
    if not (1 <= s <= k and 1 <= i <= k and k < t <= A.m and k < j <= A.m and k <= A.n):
        raise ValueError("need s, i <= k < t, j <= m and k <= n")
    if s == i or t == j:
        raise ValueError("need s != i and t != j")
    R = A.ring.base
    lhs = R.mul(corner_minor(A, k), substituted_minor(A, k, (s, t), (i, j)))
    rhs = R.sub(
        R.mul(substituted_minor(A, k, (s, t)), substituted_minor(A, k, (i, j))),
        R.mul(substituted_minor(A, k, (s, j)), substituted_minor(A, k, (i, t))),
    )
    return lhs == rhs


def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Pivoting:
    matrix: AugmentedMatrix
    perm: tuple[int, ...]
    sign: int


def pivot_permute(A: AugmentedMatrix) -> Pivoting:
    """Reorder rows so that every corner minor delta^1..delta^n is nonzero.

    Greedy: for each k the first not-yet-placed row (in original order) that
    makes delta^k nonzero is placed at position k.  The candidates' values are
    tracked by fraction-free elimination on the uncounted base ring, so the
    search never shows up in audited operation counts.  Greedy succeeds
    exactly when the coefficient block is nonsingular.
    """
    R = A.ring.base
    n = A.n
    work = {r: list(A.rows[r]) for r in range(n)}
    remaining = list(range(n))
    chosen: list[int] = []
    prev = None
    for k in range(n):
        pick = next((r for r in remaining if not R.is_zero(work[r][k])), None)
        if pick is None:
            raise NoValidPivot(f"no row makes the corner minor of order {k + 1} nonzero")
        remaining.remove(pick)
        chosen.append(pick)
        piv = work[pick]
        for r in remaining:
            row = work[r]
            for j in range(k + 1, n):
                t = R.sub(R.mul(piv[k], row[j]), R.mul(row[k], piv[j]))
                row[j] = R.div(t, prev) if prev is not None else t
        prev = piv[k]
    perm = tuple(chosen)
    return Pivoting(A.permuted(perm), perm, permutation_sign(perm))


def random_system(
    rng: random.Random,
    n: int,
    m: int,
    lo: int = -99,
    hi: int = 99,
    ring: Ring | None = None,
    regular: bool = True,
) -> AugmentedMatrix:
    """Random integer entries in [lo, hi], mapped into ``ring``.

    With ``regular`` the draw is repeated until some row order has all corner
    minors nonzero (i.e. the coefficient block is nonsingular in ``ring``).
    """
    ring = ring or IntegerRing()
    while True:
        A = AugmentedMatrix.from_ints(
            [[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)], ring
        )
        if not regular:
            return A
        try:
            pivot_permute(A)
        except NoValidPivot:
            continue
        return A
