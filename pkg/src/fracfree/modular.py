"""Integer systems by residue solves over word-size prime fields.

Every minor delta^n, delta^n_{ij} is bounded by the Hadamard product of the
augmented row norms, so residues modulo primes whose product exceeds twice
that bound determine it through the symmetric Chinese-remainder
representative.  Each residue table comes from the one-pass solver over
Z/pZ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from sympy import prevprime

from .errors import InsufficientPrimes, NoValidPivot, SingularSystem, UnluckyPrime
from .matrix import AugmentedMatrix
from .rings import IntegerRing, PrimeField
from .solvers import MinorTable, solve

WORD_THRESHOLD = 2**31


def hadamard_bound(A: AugmentedMatrix) -> int:
    """ceil(prod ||row_i||_2) over the full augmented rows.

    Any n x n minor drawn from the columns of A uses sub-vectors of these
    rows, so this bounds every delta^n and delta^n_{ij}.
    """
    if not isinstance(A.ring.base, IntegerRing):
        raise TypeError("Hadamard bound needs an integer matrix")
    sq = 1
    for row in A.rows:
        sq *= sum(v * v for v in row)
    if sq == 0:
        return 0
    return math.isqrt(sq - 1) + 1


def prime_source(threshold: int = WORD_THRESHOLD) -> Iterator[int]:
    """Primes below ``threshold`` in descending order."""
    p = threshold
    while p > 2:
        p = prevprime(p)
        yield p


def select_primes(bound: int, threshold: int = WORD_THRESHOLD) -> list[int]:
    """Fewest descending primes below ``threshold`` with product > 2*bound.

    Always at least one prime.
    """
    out: list[int] = []
    prod = 1
    for p in prime_source(threshold):
        out.append(p)
        prod *= p
        if prod > 2 * bound:
            return out
    raise InsufficientPrimes(f"primes below {threshold} cannot cover bound {bound}")


def solve_mod_p(A: AugmentedMatrix, p: int) -> MinorTable:
    """One-pass minor table of A over Z/pZ, row order normalised.

    Raises UnluckyPrime when delta^n vanishes modulo p.
    """
    F = PrimeField(p)
    try:
        table = solve(A.reduce(F), "onepass")
    except NoValidPivot:
        raise UnluckyPrime(p) from None
    return table.unpermuted()


@dataclass
class ModularPlan:
    matrix: AugmentedMatrix
    bound: int
    primes: list[int] = field(default_factory=list)
    residues: dict[int, MinorTable] = field(default_factory=dict)
    unlucky: list[int] = field(default_factory=list)

    @property
    def modulus(self) -> int:
        return math.prod(self.primes)

    def covered(self) -> bool:
        return self.modulus > 2 * self.bound


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """x = r1 (mod m1), x = r2 (mod m2) for coprime moduli; returns (x, m1*m2)."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def crt_symmetric(residues: Iterable[tuple[int, int]]) -> int:
    """Signed integer in (-M/2, M/2] with the given (residue, prime) pairs."""
    x, M = 0, 1
    for r, p in sorted(residues, key=lambda rp: rp[1]):
        x, M = crt_pair(x, M, r % p, p)
    x %= M
    return x - M if x > M // 2 else x


def crt_combine(plan: ModularPlan) -> MinorTable:
    """Reassemble the integer minor table from the kept residue tables.

    Residues are folded in sorted prime order, so the result does not depend
    on the order primes were processed in.
    """
    if not plan.primes or not plan.covered():
        raise InsufficientPrimes(
            f"product of kept primes {plan.modulus} does not exceed 2*{plan.bound}"
        )
    tables = [plan.residues[p] for p in plan.primes]
    first = tables[0]
    n, m = first.n, first.m

    def lift(get) -> int:
        return crt_symmetric((get(t), p) for t, p in zip(tables, plan.primes))

    delta = lift(lambda t: t.delta)
    minors = [[lift(lambda t, i=i, c=c: t.minors[i][c]) for c in range(m - n)] for i in range(n)]
    return MinorTable(IntegerRing(), n, m, delta, minors, plan.matrix, algorithm="modular")


def modular_solve(
    A: AugmentedMatrix,
    primes: Iterable[int] | None = None,
    threshold: int = WORD_THRESHOLD,
) -> tuple[MinorTable, ModularPlan]:
    """Minor table of an integer system via residue solves and CRT.

    ``primes`` overrides the prime stream (for example to plant an unlucky
    prime first); it is followed by the default descending stream.  A prime
    that divides delta^n is discarded and replaced.  Once the discarded primes
    multiply past the bound, delta^n must be zero and the system is singular.
    """
    bound = hadamard_bound(A)
    plan = ModularPlan(A, bound)
    stream = primes_then_default(primes, threshold)
    bad_product = 1
    for p in stream:
        if p in plan.residues or p in plan.unlucky:
            continue
        try:
            plan.residues[p] = solve_mod_p(A, p)
        except UnluckyPrime:
            plan.unlucky.append(p)
            bad_product *= p
            if bad_product > bound:
                raise SingularSystem("delta^n vanishes modulo primes whose product exceeds its bound")
            continue
        plan.primes.append(p)
        if plan.covered():
            return crt_combine(plan), plan
    raise InsufficientPrimes(f"ran out of primes below {threshold}")


def primes_then_default(primes: Iterable[int] | None, threshold: int) -> Iterator[int]:
    if primes is not None:
        yield from primes
    yield from prime_source(threshold)
