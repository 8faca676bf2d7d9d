"""Fraction-free solvers for linear systems over integral domains."""

from __future__ import annotations

from .costmodel import CostReport, CostScenario, cost_report, count_formulas, predict_time
from .errors import (
    CondensationBreakdown,
    DimensionError,
    DivisionByZero,
    FracFreeError,
    InsufficientPrimes,
    MathFailure,
    NotExact,
    NotSquare,
    NoValidPivot,
    ParseError,
    RingError,
    RingMismatch,
    SingularSystem,
    SystemSyntaxError,
    UnluckyPrime,
    ZeroCornerMinor,
)
from .fileformat import parse_system, serialize
from .matrix import AugmentedMatrix, minor_oracle, pivot_permute
from .modular import hadamard_bound, modular_solve, select_primes
from .polynomial import Poly
from .rings import CountingRing, IntegerRing, OpCounts, PolynomialRing, PrimeField, Ring, audit_counts
from .solvers import (
    MinorTable,
    Solution,
    assemble_solution,
    bareiss_solve,
    dodgson_solve,
    forward_backup_solve,
    one_pass_solve,
    run,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedMatrix",
    "CondensationBreakdown",
    "CostReport",
    "CostScenario",
    "CountingRing",
    "DimensionError",
    "DivisionByZero",
    "FracFreeError",
    "InsufficientPrimes",
    "IntegerRing",
    "MathFailure",
    "MinorTable",
    "NoValidPivot",
    "NotExact",
    "NotSquare",
    "OpCounts",
    "ParseError",
    "Poly",
    "PolynomialRing",
    "PrimeField",
    "Ring",
    "RingError",
    "RingMismatch",
    "SingularSystem",
    "Solution",
    "SystemSyntaxError",
    "UnluckyPrime",
    "ZeroCornerMinor",
    "assemble_solution",
    "audit_counts",
    "bareiss_solve",
    "cost_report",
    "count_formulas",
    "dodgson_solve",
    "forward_backup_solve",
    "hadamard_bound",
    "minor_oracle",
    "modular_solve",
    "one_pass_solve",
    "parse_system",
    "pivot_permute",
    "predict_time",
    "run",
    "select_primes",
    "serialize",
    "solve",
]
