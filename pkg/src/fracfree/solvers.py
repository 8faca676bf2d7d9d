"""Fraction-free solvers for Ax = a over an integral domain.

Four ways of computing the same minors: the corner minor delta^n and the
substituted minors delta^n_{ij} (column i of delta^n replaced by column j of
the augmented matrix), from which Cramer's rule gives the solution.

* Dodgson condensation (contiguous minors), plus its back-substitution part
* Bareiss forward elimination followed by the Bareiss back-up pass
* the same forward elimination followed by the direct back-up formula
* the one-pass method, which builds delta^{k+1} minors from delta^k and row k+1

All ring arithmetic goes through ``A.ring`` so a :class:`CountingRing` audits
it.  Work that is not part of an algorithm proper (pivot search, forming the
final quotients) runs on the uncounted base ring.

Indexing is 0-based internally; tableaux exposed through ``keep=True`` are
keyed by the 1-based ``(k, i, j)`` used in the literature.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable

from .errors import (
    CondensationBreakdown,
    NotExact,
    NotSquare,
    SingularSystem,
    ZeroCornerMinor,
)
from .matrix import AugmentedMatrix, pivot_permute
from .rings import CountingRing, IntegerRing, OpCounts, PolynomialRing, PrimeField, Ring

Tableau = dict[tuple[int, int, int], Any]


@dataclass
class MinorTable:
    """delta^n and delta^n_{ij} (i = 1..n, j = n+1..m) of ``matrix``.

    ``matrix`` is the (possibly row-permuted) matrix the minors belong to;
    ``perm[k]`` is the original index of its row k and ``sign`` the parity of
    that permutation.
    """

    ring: Ring
    n: int
    m: int
    delta: Any
    minors: list[list[Any]]
    matrix: AugmentedMatrix
    perm: tuple[int, ...] = ()
    sign: int = 1
    algorithm: str = ""
    tableaux: dict[str, Tableau] | None = None

    def __post_init__(self):
        if not self.perm:
            self.perm = tuple(range(self.n))

    def minor(self, i: int, j: int):
        """delta^n_{ij}, 1-based, j > n."""
        if not (1 <= i <= self.n and self.n < j <= self.m):
            raise IndexError(f"no minor delta^n_{{{i},{j}}} in a {self.n}x{self.m} table")
        return self.minors[i - 1][j - self.n - 1]

    def unpermuted(self) -> MinorTable:
        """The same minors expressed for the original row order."""
        if self.sign == 1:
            return replace(self, perm=tuple(range(self.n)), sign=1, tableaux=None)
        R = self.ring.base
        return replace(
            self,
            delta=R.neg(self.delta),
            minors=[[R.neg(v) for v in row] for row in self.minors],
            perm=tuple(range(self.n)),
            sign=1,
            tableaux=None,
        )

    def values(self) -> tuple[Any, list[list[Any]]]:
        """(delta, minors) for the original row order; comparable across runs."""
        t = self.unpermuted()
        return t.delta, t.minors


# -- Dodgson ---------------------------------------------------------------


@dataclass
class Condensation:
    """Contiguous minors: ``levels[k][i][j]`` is the order-k minor whose
    window ends at row i, column j (0-based); None where undefined."""

    matrix: AugmentedMatrix
    levels: dict[int, list[list[Any]]]

    @property
    def n(self) -> int:
        return self.matrix.n

    def final_row(self) -> list[Any]:
        """ahat^n_{nj} for j = n..m."""
        top = self.levels[self.n]
        return [top[self.n - 1][j] for j in range(self.n - 1, self.matrix.m)]

    def tableau(self) -> Tableau:
        out = {}
        for k, grid in self.levels.items():
            for i, row in enumerate(grid):
                for j, v in enumerate(row):
                    if v is not None:
                        out[(k, i + 1, j + 1)] = v
        return out


def dodgson_condense(A: AugmentedMatrix) -> Condensation:
    """All contiguous minors of orders 1..n by repeated 2x2 condensation."""
    R = A.ring
    n, m = A.n, A.m
    levels = {1: A.tolist()}
    for k in range(1, n):
        prev = levels[k]
        cur: list[list[Any]] = [[None] * m for _ in range(n)]
        for i in range(k, n):
            for j in range(k, m):
                t = R.sub(R.mul(prev[i - 1][j - 1], prev[i][j]), R.mul(prev[i - 1][j], prev[i][j - 1]))
                if k >= 2:
                    den = levels[k - 1][i - 1][j - 1]
                    if R.is_zero(den):
                        raise CondensationBreakdown(k, i + 1, j + 1)
                    t = R.div(t, den)
                cur[i][j] = t
        levels[k + 1] = cur
    return Condensation(A, levels)


def dodgson_solve(A: AugmentedMatrix, keep: bool = False) -> MinorTable:
    """Solve a square system by condensation and repeated back-substitution.

    Each round condenses the current system; the top-order window that
    contains the free column is, up to the sign (-1)^(s-1), the Cramer
    numerator of the *first* remaining unknown.  That unknown is substituted,
    the first column and last equation are dropped, and only the minors whose
    window touches the recalculated free column are recomputed.

    While every unknown lies in the ring the free column stays in the ring.
    Otherwise it is carried as a numerator column over a common denominator,
    which costs extra multiplications.
    """
    n, m = A.n, A.m
    if m != n + 1:
        raise NotSquare(f"Dodgson back-substitution needs m = n+1, got {n}x{m}")
    R = A.ring
    R0 = R.base
    a = A.rows
    cond = dodgson_condense(A)
    T = cond.levels
    last = n - 1  # rightmost coefficient column
    delta = T[n][n - 1][last]
    if R0.is_zero(delta):
        raise SingularSystem("delta^n = 0")

    xs: list[tuple[Any, Any]] = [None] * n  # type: ignore[list-item]
    B = [a[i][n] for i in range(n)]
    S = None  # common denominator of the free column; None while in the ring
    F = {k: [T[k][i][n] if i >= k - 1 else None for i in range(n)] for k in range(1, n + 1)}
    for s in range(n, 0, -1):
        o = n - s
        if s < n:
            F = {1: B}
            for k in range(1, s):
                lower = F[k]
                cur = [None] * s
                for i in range(k, s):
                    t = R.sub(R.mul(T[k][i - 1][last], lower[i]), R.mul(lower[i - 1], T[k][i][last]))
                    if k >= 2:
                        den = T[k - 1][i - 1][last]
                        if R.is_zero(den):
                            raise CondensationBreakdown(k, i + 1, n + 1)
                        t = R.div(t, den)
                    cur[i] = t
                F[k + 1] = cur
        W = F[s][s - 1]
        pivot = T[s][s - 1][last]
        if R0.is_zero(pivot):
            raise CondensationBreakdown(s + 1, s, last + 1)
        negate = (s - 1) % 2 == 1
        N = R0.neg(W) if negate else W
        x = None
        if S is None:
            try:
                x = R0.div(N, pivot)
            except NotExact:
                x = None
        if x is not None:
            xs[o] = (x, R0.one())
            B = [R.sub(B[r], R.mul(a[r][o], x)) for r in range(s - 1)]
        else:
            den = pivot if S is None else R.mul(S, pivot)
            xs[o] = (N, den)
            if s > 1:
                combine = R.add if negate else R.sub
                B = [combine(R.mul(pivot, B[r]), R.mul(W, a[r][o])) for r in range(s - 1)]
                S = den

    # Cramer numerators delta^n_{i,m} = x_i * delta^n, exact in the ring
    minors = [[R0.div(R0.mul(delta, num), den)] for num, den in xs]
    tableaux = {"ahat": cond.tableau()} if keep else None
    return MinorTable(R, n, m, delta, minors, A, algorithm="dodgson", tableaux=tableaux)


# -- Bareiss forward and the two back-up passes ----------------------------


@dataclass
class ForwardTableau:
    """Result of fraction-free forward elimination.

    ``rows[r][j]`` holds a^{r+1}_{r+1,j+1}: the minor on rows 1..r+1 and
    columns 1..r, j+1.  Entries left of the diagonal are stale.
    """

    matrix: AugmentedMatrix
    rows: list[list[Any]]
    history: Tableau | None = None

    @property
    def ring(self) -> Ring:
        return self.matrix.ring


def bareiss_forward(A: AugmentedMatrix, keep: bool = False) -> ForwardTableau:
    R = A.ring
    n, m = A.n, A.m
    a = A.tolist()
    hist: Tableau | None = None
    if keep:
        hist = {(1, i + 1, j + 1): a[i][j] for i in range(n) for j in range(m)}
    for k in range(n - 1):
        piv = a[k][k]
        if R.is_zero(piv):
            raise ZeroCornerMinor(k + 1)
        for i in range(k + 1, n):
            for j in range(k + 1, m):
                t = R.sub(R.mul(piv, a[i][j]), R.mul(a[i][k], a[k][j]))
                if k:
                    t = R.div(t, a[k - 1][k - 1])
                a[i][j] = t
                if hist is not None:
                    hist[(k + 2, i + 1, j + 1)] = t
    return ForwardTableau(A, a, hist)


def _table(fw_or_A, d, algorithm: str, tableaux=None) -> MinorTable:
    A = fw_or_A.matrix if isinstance(fw_or_A, ForwardTableau) else fw_or_A
    n, m = A.n, A.m
    return MinorTable(
        A.ring,
        n,
        m,
        d[n - 1][n - 1],
        [[d[i][j] for j in range(n, m)] for i in range(n)],
        A,
        algorithm=algorithm,
        tableaux=tableaux,
    )


def bareiss_backup(fw: ForwardTableau, keep: bool = False) -> MinorTable:
    """Raise the substituted minors one order per step.

    Step k turns delta^k_{ij} (i <= k) into delta^{k+1}_{ij} using the forward
    pivot a^{k+1}_{k+1,k+1} and divides by a^k_{kk}; row k+1 is seeded with
    a^{k+1}_{k+1,j}.  Column k+1 is skipped: those minors vanish.
    """
    R = fw.ring
    A = fw.matrix
    n, m = A.n, A.m
    a = fw.rows
    d = [list(a[0])] + [[None] * m for _ in range(n - 1)]
    hist: Tableau | None = {} if keep else None
    for k in range(1, n):
        piv, den = a[k][k], a[k - 1][k - 1]
        if R.is_zero(den):
            raise ZeroCornerMinor(k)
        for i in range(k):
            row = d[i]
            for j in range(k + 1, m):
                row[j] = R.div(R.sub(R.mul(piv, row[j]), R.mul(a[k][j], row[k])), den)
                if hist is not None:
                    hist[(k + 1, i + 1, j + 1)] = row[j]
        d[k] = list(a[k])
    tableaux = None
    if keep:
        tableaux = {"a": fw.history or {}, "delta": hist}
    return _table(fw, d, "bareiss", tableaux)


def forward_backup(fw: ForwardTableau) -> MinorTable:
    """Back-up pass computing delta^n_{ij} directly, last row first."""
    R = fw.ring
    A = fw.matrix
    n, m = A.n, A.m
    a = fw.rows
    d: list[list[Any]] = [[None] * m for _ in range(n)]
    d[n - 1] = list(a[n - 1])
    top = a[n - 1][n - 1]
    for i in range(n - 2, -1, -1):
        if R.is_zero(a[i][i]):
            raise ZeroCornerMinor(i + 1)
        for j in range(n, m):
            t = R.mul(top, a[i][j])
            for k in range(i + 1, n):
                t = R.sub(t, R.mul(a[i][k], d[k][j]))
            d[i][j] = R.div(t, a[i][i])
    tableaux = {"a": fw.history} if fw.history is not None else None
    return _table(fw, d, "fb", tableaux)


def bareiss_solve(A: AugmentedMatrix, keep: bool = False) -> MinorTable:
    return bareiss_backup(bareiss_forward(A, keep), keep)


def forward_backup_solve(A: AugmentedMatrix, keep: bool = False) -> MinorTable:
    return forward_backup(bareiss_forward(A, keep))


# -- one-pass ----------------------------------------------------------------


def one_pass_solve(A: AugmentedMatrix, keep: bool = False) -> MinorTable:
    """Single sweep: after step k the first k+1 equations are diagonalised.

    Row k+1 of the new minors is the expansion of delta^{k+1}_{k+1,j} along
    its last row; the older rows are lifted by the two-column substitution
    identity with an exact division by delta^k.
    """
    R = A.ring
    n, m = A.n, A.m
    a = A.rows
    d: list[list[Any]] = [list(a[0])] + [[None] * m for _ in range(n - 1)]
    hist: Tableau | None = None
    if keep:
        hist = {(1, 1, j + 1): a[0][j] for j in range(m)}
    if n >= 2:
        for j in range(1, m):
            d[1][j] = R.sub(R.mul(a[0][0], a[1][j]), R.mul(a[1][0], a[0][j]))
        for j in range(2, m):
            d[0][j] = R.sub(R.mul(a[0][j], a[1][1]), R.mul(a[1][j], a[0][1]))
        if hist is not None:
            hist.update({(2, 2, j + 1): d[1][j] for j in range(1, m)})
            hist.update({(2, 1, j + 1): d[0][j] for j in range(2, m)})
    for k in range(2, n):
        dk = d[k - 1][k - 1]
        if R.is_zero(dk):
            raise ZeroCornerMinor(k)
        new: list[Any] = [None] * m
        for j in range(k, m):
            t = R.mul(a[k][j], dk)
            for s in range(k):
                t = R.sub(t, R.mul(a[k][s], d[s][j]))
            new[j] = t
        d[k] = new
        piv = new[k]
        for i in range(k):
            row = d[i]
            for j in range(k + 1, m):
                row[j] = R.div(R.sub(R.mul(piv, row[j]), R.mul(new[j], row[k])), dk)
        if hist is not None:
            hist.update({(k + 1, k + 1, j + 1): new[j] for j in range(k, m)})
            hist.update({(k + 1, i + 1, j + 1): d[i][j] for i in range(k) for j in range(k + 1, m)})
    return _table(A, d, "onepass", {"delta": hist} if hist is not None else None)


# -- dispatch -----------------------------------------------------------------

ALGORITHMS: dict[str, Callable[..., MinorTable]] = {
    "dodgson": dodgson_solve,
    "bareiss": bareiss_solve,
    "fb": forward_backup_solve,
    "onepass": one_pass_solve,
}

ALIASES = {"forward_backup": "fb", "one_pass": "onepass"}


def canonical_algorithm(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}")
    return name


def solve(A: AugmentedMatrix, algorithm: str = "onepass", pivot: bool = True, keep: bool = False) -> MinorTable:
    """Compute the minor table with row pivoting (never for Dodgson)."""
    algorithm = canonical_algorithm(algorithm)
    fn = ALGORITHMS[algorithm]
    if algorithm == "dodgson" or not pivot:
        return fn(A, keep=keep)
    pv = pivot_permute(A)
    table = fn(pv.matrix, keep=keep)
    table.perm, table.sign = pv.perm, pv.sign
    return table


def run(A: AugmentedMatrix, algorithm: str = "onepass", pivot: bool = True, keep: bool = False) -> tuple[MinorTable, OpCounts]:
    """``solve`` on a counting view of the ring; returns the table and its tally."""
    counter = CountingRing(A.ring.base)
    table = solve(A.with_ring(counter), algorithm, pivot=pivot, keep=keep)
    return table, counter.counts


# -- Cramer assembly -----------------------------------------------------------


def quotient(ring: Ring, num, den):
    """num/den as a canonical value of the fraction field.

    Integers give a Fraction, prime fields a reduced residue, polynomials the
    exact quotient when there is one and otherwise a (num, den) pair.
    """
    R = ring.base
    if isinstance(R, IntegerRing):
        return Fraction(num, den)
    if isinstance(R, PrimeField):
        return R.div(num, den)
    try:
        return R.div(num, den)
    except NotExact:
        if den.leading_term()[1] < 0:
            num, den = -num, -den
        return (num, den)


@dataclass
class Solution:
    """x_i = (num_i - sum_j x_j * free[i][j]) / den for i = 1..n.

    ``free[i]`` lists the coefficients of the free unknowns x_{n+1}..x_{m-1}.
    """

    ring: Ring
    n: int
    m: int
    den: Any
    num: list[Any]
    free: list[list[Any]] = field(default_factory=list)

    @property
    def parametric(self) -> bool:
        return self.m > self.n + 1

    def values(self) -> list[Any]:
        """Explicit values; free unknowns are taken as zero."""
        return [quotient(self.ring, v, self.den) for v in self.num]

    def unknown_name(self, i: int) -> str:
        # polynomial entries already use x1..xr
        prefix = "y" if isinstance(self.ring.base, PolynomialRing) else "x"
        return f"{prefix}{i}"

    def render(self) -> list[str]:
        R = self.ring.base
        out = []
        for i in range(self.n):
            lhs = self.unknown_name(i + 1)
            if isinstance(R, (IntegerRing, PrimeField)):
                parts = [(None, quotient(R, self.num[i], self.den))]
                for c, coef in enumerate(self.free[i]):
                    parts.append((self.unknown_name(self.n + c + 1), quotient(R, R.neg(coef), self.den)))
                out.append(f"{lhs} = {_linear(parts)}")
            else:
                expr = f"({self.num[i]})"
                for c, coef in enumerate(self.free[i]):
                    expr += f" - ({coef})*{self.unknown_name(self.n + c + 1)}"
                out.append(f"{lhs} = ({expr})/({self.den})")
        return out

    def satisfies(self, A: AugmentedMatrix, free_values: list[Any] | None = None) -> bool:
        """Check every equation of ``A`` exactly, cleared of the denominator."""
        R = self.ring.base
        nfree = self.m - self.n - 1
        fv = list(free_values) if free_values is not None else [R.zero()] * nfree
        if len(fv) != nfree:
            raise ValueError(f"expected {nfree} free values")
        # den * x_i, in the ring
        scaled = []
        for i in range(self.n):
            v = self.num[i]
            for c in range(nfree):
                v = R.sub(v, R.mul(fv[c], self.free[i][c]))
            scaled.append(v)
        for row in A.rows:
            lhs = R.zero()
            for i in range(self.n):
                lhs = R.add(lhs, R.mul(row[i], scaled[i]))
            for c in range(nfree):
                lhs = R.add(lhs, R.mul(self.den, R.mul(row[self.n + c], fv[c])))
            if lhs != R.mul(self.den, row[-1]):
                return False
        return True


def _linear(parts: list[tuple[str | None, Any]]) -> str:
    const = parts[0][1]
    text = str(const) if const != 0 else ""
    for name, c in parts[1:]:
        if c == 0:
            continue
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        body = name if mag == 1 else f"{mag}*{name}"
        if not text:
            text = ("-" if neg else "") + body
        else:
            text += (" - " if neg else " + ") + body
    return text or "0"


def assemble_solution(t: MinorTable) -> Solution:
    """Cramer's rule on a minor table (row permutation undone first)."""
    R = t.ring.base
    if R.is_zero(t.delta):
        raise SingularSystem("delta^n = 0")
    u = t.unpermuted()
    return Solution(
        R,
        t.n,
        t.m,
        u.delta,
        [row[-1] for row in u.minors],
        [row[:-1] for row in u.minors],
    )
