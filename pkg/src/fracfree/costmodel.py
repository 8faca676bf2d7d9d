"""Closed-form operation counts and cost-model evaluators.

Everything here is a formula evaluator: nothing is timed.  Integral formulas
are evaluated in exact integers, the rest in ``Fraction``; only the modulus
count involves a logarithm.

Algorithms are named ``dodgson``, ``bareiss``, ``fb`` (forward and back-up
procedures) and ``onepass``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

from .rings import OpCounts
from .solvers import canonical_algorithm

ALGORITHM_ORDER = ("dodgson", "bareiss", "fb", "onepass")
KINDS = ("unit", "real-poly", "int-poly", "modular")

Number = int | Fraction


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"formula is not integral: {num}/{den}")
    return q


def _counts(mul, div, addsub) -> OpCounts:
    return OpCounts(int(mul), int(div), int(addsub))


# -- exact counts -------------------------------------------------------------

def _bareiss(n, m):
    return _counts(
        2 * n * n * m - n**3 - 2 * n * m + n,
        _exact(2 * n * n * m - n**3 - 4 * n * m + 2 * m + 3 * n - 2, 2),
        _exact(2 * n * n * m - n**3 - 2 * n * m + n, 2),
    )


def _forward_backup(n, m):
    return _counts(
        _exact(9 * n * n * m - 5 * n**3 - 3 * n * m - 3 * n * n - 6 * m + 8 * n, 6),
        _exact(3 * n * n * m - n**3 - 3 * n * m - 6 * n * n + 13 * n - 6, 6),
        _exact(6 * n * n * m - 4 * n**3 - 6 * n * m + 3 * n * n + n, 6),
    )


def _one_pass(n, m):
    return _counts(
        _exact(9 * n * n * m - 6 * n**3 - 3 * n * m - 6 * m + 6 * n, 6),
        _exact(3 * n * n * m - 2 * n**3 - 3 * n * m - 6 * m + 2 * n + 12, 6),
        _exact(6 * n * n * m - 4 * n**3 - 6 * n * m + 3 * n * n + n, 6),
    )


# Square-system table (m = n+1) in its reference form, one row per algorithm.
# Dodgson's division entry is negative for small n; see dodgson_counts.
REFERENCE_TABLE = {
    "dodgson": (
        lambda n: Fraction(2 * n**3 - n**2 - n, 2),
        lambda n: Fraction(n**3 - 4 * n**2 - 5 * n - 2, 2),
        lambda n: Fraction(n**3 - n, 2),
    ),
    "bareiss": (
        lambda n: Fraction(n**3 - n),
        lambda n: Fraction(n**3 - 2 * n**2 + n, 2),
        lambda n: Fraction(n**3 - n, 2),
    ),
    "fb": (
        lambda n: Fraction(4 * n**3 + 3 * n**2 - n - 6, 6),
        lambda n: Fraction(2 * n**3 - 6 * n**2 + 10 * n - 6, 6),
        lambda n: Fraction(2 * n**3 + 3 * n**2 - 5 * n, 6),
    ),
    "onepass": (
        lambda n: Fraction(n**3 + 2 * n**2 - n - 2, 2),
        lambda n: Fraction(n**3 - 7 * n + 6, 6),
        lambda n: Fraction(2 * n**3 + 3 * n**2 - 5 * n, 6),
    ),
}


def reference_table_row(algorithm: str, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """(mul, div, addsub) of the reference m = n+1 table, unvalidated."""
    return tuple(f(n) for f in REFERENCE_TABLE[canonical_algorithm(algorithm)])  # type: ignore[return-value]


def dodgson_counts(n: int) -> OpCounts:
    """Dodgson on a square system when every unknown lies in the ring.

    Matches the reference multiplications and additions; the division entry
    uses +5n where the reference row has -5n (which is negative at n = 2).
    """
    return _counts(
        _exact(2 * n**3 - n**2 - n, 2),
        _exact(n**3 - 4 * n**2 + 5 * n - 2, 2),
        _exact(n**3 - n, 2),
    )


def count_formulas(algorithm: str, n: int, m: int) -> OpCounts:
    """Exact ring-operation counts for an n x m augmented system."""
    algorithm = canonical_algorithm(algorithm)
    if not 2 <= n < m:
        raise ValueError(f"counts need 2 <= n < m, got n={n}, m={m}")
    if algorithm == "dodgson":
        if m != n + 1:
            raise ValueError("Dodgson counts exist only for m = n+1")
        return dodgson_counts(n)
    return {"bareiss": _bareiss, "fb": _forward_backup, "onepass": _one_pass}[algorithm](n, m)


# -- operand-size-aware costs -------------------------------------------------


@dataclass(frozen=True)
class CostScenario:
    """Ring model and unit costs.

    ``kind``: ``unit`` (every operation costs its unit time), ``real-poly``
    (polynomials in r variables of degree p per variable, one word per
    coefficient), ``int-poly`` (same, coefficients of l words, grown with the
    minor order) or ``modular`` (word-size residues).
    """

    kind: str = "unit"
    r: int = 0
    p: int = 1
    l: int = 1
    t_mul: Number = 1
    t_div: Number = 1
    t_add: Number = 0
    modulus_bits: int = 31

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.r < 0 or self.p < 0 or self.l < 1 or self.modulus_bits < 1:
            raise ValueError("need r >= 0, p >= 0, l >= 1, modulus_bits >= 1")
        if min(self.t_mul, self.t_div, self.t_add) < 0:
            raise ValueError("unit times must be non-negative")


class OpTimes(NamedTuple):
    A: Number
    M: Number
    D: Number


def coefficient_costs(i: int, j: int, s: CostScenario) -> tuple[Number, Number, Number]:
    """(a_ij, m_ij, d_ij): coefficient add/mul/div cost for minors of order i, j."""
    if s.kind == "int-poly":
        l = s.l
        mul = i * j * l * l * (s.t_mul + 2 * s.t_add)
        div = (i * l - j * l + 1) * (s.t_div + j * l * (s.t_mul + 2 * s.t_add))
        return 2 * j * l * s.t_add, mul, div
    return s.t_add, s.t_mul, s.t_div


def poly_op_times(i: int, j: int, s: CostScenario) -> OpTimes:
    """Cost of +, *, / between minors of orders i and j (``D`` needs i >= j)."""
    if i < 0 or j < 0:
        raise ValueError("minor orders must be non-negative")
    if s.kind in ("unit", "modular"):
        return OpTimes(s.t_add, s.t_mul, s.t_div)
    r, p = s.r, s.p
    a_ij, m_ij, d_ij = coefficient_costs(i, j, s)
    add = (j * p + 1) ** r * a_ij
    mul = (i * p + 1) ** r * (j * p + 1) ** r * (m_ij + coefficient_costs(i + j, i + j, s)[0])
    if i >= j:
        m_q = coefficient_costs(i - j, j, s)[1]
        a_ii = coefficient_costs(i, i, s)[0]
        div = (i * p - j * p + 1) ** r * (d_ij + (j * p + 1) ** r * (m_q + a_ii))
    else:
        div = None
    return OpTimes(add, mul, div)  # type: ignore[arg-type]


class _Costs:
    def __init__(self, s: CostScenario):
        self.s = s
        self._cache: dict[tuple[int, int], OpTimes] = {}

    def _get(self, i, j):
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = poly_op_times(i, j, self.s)
        return self._cache[key]

    def A(self, i, j):
        return self._get(i, j).A

    def M(self, i, j):
        return self._get(i, j).M

    def D(self, i, j):
        if i < j:
            raise ValueError(f"D_{i},{j} needs i >= j")
        return self._get(i, j).D


def _condensation_time(c: _Costs, n: int, m: int) -> Number:
    total = (n - 1) * (m - 1) * (2 * c.M(1, 1) + c.A(2, 2))
    for i in range(2, n):
        total += (n - i) * (m - i) * (2 * c.M(i, i) + c.A(2 * i, 2 * i) + c.D(2 * i, i - 1))
    return total


def _dodgson_second_time(c: _Costs, n: int, reference: bool) -> Number:
    total = sum(i * (c.M(1, 1) + c.A(2, 1)) for i in range(1, n))
    total += sum(j * (2 * c.M(1, 2) + c.A(3, 3)) for j in range(1, n - 1))
    for i in range(2, n - 1):
        # order-(i+1) minors touching the free column, over all later rounds
        times = i if reference else Fraction((n - 1 - i) * (n - i), 2)
        total += times * (2 * c.M(i, i + 1) + c.A(2 * i + 1, 2 * i + 1) + c.D(2 * i + 1, i - 1))
    return total


def _bareiss_backup_time(c: _Costs, n: int, m: int) -> Number:
    return sum(
        i * (m - i - 1) * (2 * c.M(i, i + 1) + c.A(2 * i + 1, 2 * i + 1) + c.D(2 * i + 1, i))
        for i in range(1, n)
    )


def _fb_backup_time(c: _Costs, n: int, m: int) -> Number:
    return (m - n) * sum(
        (n + 1 - i) * c.M(n, i) + (n - i) * c.A(i + n, i + n) + c.D(i + n, i) for i in range(1, n)
    )


def _one_pass_time(c: _Costs, n: int, m: int, reference: bool) -> Number:
    total = (2 * m - 3) * (2 * c.M(1, 1) + c.A(2, 2))
    for k in range(2, n):
        total += (m - k) * ((k + 1) * c.M(k, 1) + k * c.A(k + 1, k + 1))
    # the k = 1 lifts are already the (m-2) second-order minors counted above
    for k in range(1 if reference else 2, n):
        total += k * (m - k - 1) * (2 * c.M(k, k + 1) + c.A(2 * k + 1, 2 * k + 1) + c.D(2 * k + 1, k))
    return total


def predict_time(algorithm: str, n: int, m: int, s: CostScenario, reference: bool = False) -> Number:
    """Total arithmetic time by direct summation of the per-step costs.

    ``reference=True`` uses the reference summation limits for the Dodgson
    back-substitution and the one-pass lifting sums; the default limits are
    the ones that agree with the exact operation counts under unit costs.
    """
    algorithm = canonical_algorithm(algorithm)
    if not 2 <= n < m:
        raise ValueError(f"need 2 <= n < m, got n={n}, m={m}")
    c = _Costs(s)
    if algorithm == "dodgson":
        if m != n + 1:
            raise ValueError("Dodgson timing exists only for m = n+1")
        return _condensation_time(c, n, m) + _dodgson_second_time(c, n, reference)
    if algorithm == "bareiss":
        return _condensation_time(c, n, m) + _bareiss_backup_time(c, n, m)
    if algorithm == "fb":
        return _condensation_time(c, n, m) + _fb_backup_time(c, n, m)
    return _one_pass_time(c, n, m, reference)


def backup_times(n: int, m: int, s: CostScenario) -> dict[str, Number]:
    """The two back-up procedures in isolation (cubic vs quadratic at m = n+1)."""
    c = _Costs(s)
    return {"bareiss": _bareiss_backup_time(c, n, m), "fb": _fb_backup_time(c, n, m)}


# -- asymptotic scales --------------------------------------------------------


def rho(n: int, s: CostScenario) -> int:
    return n ** (s.r + 2) * s.p ** (2 * s.r)


def sigma(n: int, s: CostScenario) -> Fraction:
    r = s.r
    return Fraction(3 * n ** (2 * r + 3) * s.p ** (2 * r), (2 * r + 1) * (2 * r + 2) * (2 * r + 3))


def psi(n: int, s: CostScenario) -> Fraction:
    r = s.r
    return Fraction(3 * n ** (2 * r + 5) * s.p ** (2 * r) * s.l**2, (2 * r + 3) * (2 * r + 4) * (2 * r + 5))


def real_poly_ratio(r: int) -> tuple[int, int, int, int]:
    return (3, 2 * r + 3, 2, 2 * r + 1)


def int_poly_ratio(r: int) -> tuple[int, int, int, int]:
    return (3, 2 * r + 5, 2, 2 * r + 3)


def modulus_count(n: int, s: CostScenario) -> int:
    """Number of word-size moduli, rounded up.

    For r >= 1: p*r*n^2 * (l + log(n p^3) / (2 log m_i)).  For r = 0 the
    coefficient-level count n * (l + log(n p^3) / (2 log m_i)); p = 0 is read
    as p = 1 there (constant entries).  Logarithms are base 2, so
    log m_i = modulus_bits.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = s.p if s.r >= 1 else max(s.p, 1)
    if s.r >= 1 and p == 0:
        return 0
    scale = p * s.r * n * n if s.r >= 1 else n
    x = n * p**3
    if x & (x - 1) == 0:
        log_x: Number = Fraction(x.bit_length() - 1)
        value = scale * (s.l + log_x / (2 * s.modulus_bits))
        return math.ceil(value)
    return math.ceil(scale * s.l + scale * math.log2(x) / (2 * s.modulus_bits))


def nu(n: int, s: CostScenario) -> Fraction:
    return Fraction(modulus_count(n, s) * n**3, 3)


MODULAR_COEFFS = {"dodgson": (6, 3), "bareiss": (6, 3), "fb": (4, 2), "onepass": (3, 1)}


def modular_time_closed_form(algorithm: str, n: int, s: CostScenario) -> Fraction:
    """Reference leading-term modular time (c_m * t_mul + c_d * t_div) * nu."""
    cm, cd = MODULAR_COEFFS[canonical_algorithm(algorithm)]
    return (cm * s.t_mul + cd * s.t_div) * nu(n, s)


def modular_time(algorithm: str, n: int, s: CostScenario) -> Number:
    """mu residue solves, each costing its exact mul/div count (m = n+1)."""
    c = count_formulas(algorithm, n, n + 1)
    return modulus_count(n, s) * (c.mul * s.t_mul + c.div * s.t_div)


# -- report --------------------------------------------------------------------


@dataclass
class CostReport:
    n: int
    m: int
    scenario: CostScenario
    counts: dict[str, OpCounts] = field(default_factory=dict)
    times: dict[str, Number] = field(default_factory=dict)
    scale_name: str = ""
    scale: Number = 1
    ratios: dict[str, float] = field(default_factory=dict)
    expected_ratios: dict[str, float] | None = None
    sigma: Fraction | None = None
    rho: int | None = None
    psi: Fraction | None = None
    mu: int | None = None
    nu: Fraction | None = None

    def as_dict(self) -> dict[str, Any]:
        def num(v):
            if v is None:
                return None
            if isinstance(v, Fraction):
                return str(v) if v.denominator != 1 else v.numerator
            return v

        return {
            "n": self.n,
            "m": self.m,
            "scenario": {k: num(v) for k, v in asdict(self.scenario).items()},
            "counts": {k: v.as_dict() for k, v in self.counts.items()},
            "times": {k: num(v) for k, v in self.times.items()},
            "scale": {"name": self.scale_name, "value": num(self.scale)},
            "ratios": self.ratios,
            "expected_ratios": self.expected_ratios,
            "sigma": num(self.sigma),
            "rho": num(self.rho),
            "psi": num(self.psi),
            "mu": self.mu,
            "nu": num(self.nu),
        }


def cost_report(n: int, m: int, s: CostScenario) -> CostReport:
    square = m == n + 1
    algs = [a for a in ALGORITHM_ORDER if square or a != "dodgson"]
    rep = CostReport(n, m, s)
    rep.counts = {a: count_formulas(a, n, m) for a in algs}
    rep.mu = modulus_count(n, s)
    rep.nu = nu(n, s)
    if s.kind == "modular":
        if square:
            rep.times = {a: modular_time(a, n, s) for a in algs}
            rep.scale_name, rep.scale = "onepass", rep.times["onepass"]
            rep.expected_ratios = {
                a: float(modular_time_closed_form(a, n, s) / modular_time_closed_form("onepass", n, s))
                for a in algs
            }
    else:
        rep.times = {a: predict_time(a, n, m, s) for a in algs}
    if s.kind == "real-poly":
        rep.sigma, rep.rho = sigma(n, s), rho(n, s)
        rep.scale_name, rep.scale = "sigma", rep.sigma
        if square:
            rep.expected_ratios = dict(zip(ALGORITHM_ORDER, map(float, real_poly_ratio(s.r))))
    elif s.kind == "int-poly":
        rep.psi = psi(n, s)
        rep.scale_name, rep.scale = "psi", rep.psi
        if square:
            rep.expected_ratios = dict(zip(ALGORITHM_ORDER, map(float, int_poly_ratio(s.r))))
    elif s.kind == "unit":
        rep.scale_name, rep.scale = "n^3", n**3
        if square and s.t_add == 0:
            rep.expected_ratios = {
                "dodgson": float(s.t_mul + Fraction(1, 2) * s.t_div),
                "bareiss": float(s.t_mul + Fraction(1, 2) * s.t_div),
                "fb": float(Fraction(2, 3) * s.t_mul + Fraction(1, 3) * s.t_div),
                "onepass": float(Fraction(1, 2) * s.t_mul + Fraction(1, 6) * s.t_div),
            }
    if rep.times and rep.scale:
        rep.ratios = {a: float(Fraction(t) / Fraction(rep.scale)) for a, t in rep.times.items()}
    return rep
