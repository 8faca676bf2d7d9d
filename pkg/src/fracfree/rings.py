"""Commutative rings with exact division, and an operation-counting wrapper.

Elements are plain values (``int`` for the integers and prime fields,
:class:`~fracfree.polynomial.Poly` for polynomials); the ring object carries
the tag and performs the arithmetic.  Every solver talks to its ring only
through ``add/sub/neg/mul/div``, so wrapping the ring in :class:`CountingRing`
audits a whole run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from sympy import isprime

from .errors import DivisionByZero, NotExact, RingError, RingMismatch
from .polynomial import Poly

WORD_BITS = 64


@dataclass
class OpCounts:
    mul: int = 0
    div: int = 0
    addsub: int = 0

    def __add__(self, other: OpCounts) -> OpCounts:
        return OpCounts(self.mul + other.mul, self.div + other.div, self.addsub + other.addsub)

    def as_dict(self) -> dict[str, int]:
        return {"mul": self.mul, "div": self.div, "addsub": self.addsub}

    def total(self) -> int:
        return self.mul + self.div + self.addsub


class Ring:
    """Integral domain interface shared by every concrete ring."""

    tag: str

    def zero(self) -> Any:
        return self.from_int(0)

    def one(self) -> Any:
        return self.from_int(1)

    def from_int(self, k: int) -> Any:
        raise NotImplementedError

    def check(self, a: Any) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def div(self, a, b):
        """Exact quotient of ``a`` by ``b``."""
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    @property
    def base(self) -> Ring:
        """The ring that does the arithmetic (itself unless wrapped)."""
        return self

    def arith(self, op: str, a, b=None):
        if op == "neg":
            return self.neg(a)
        if op not in ("add", "sub", "mul", "div"):
            raise ValueError(f"unknown ring operation {op!r}")
        return getattr(self, op)(a, b)


class IntegerRing(Ring):
    tag = "int"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")

    def __repr__(self):
        return "IntegerRing()"

    def from_int(self, k):
        return int(k)

    def check(self, a):
        if type(a) is not int:
            raise RingMismatch(f"{a!r} is not an integer")
        return a

    def add(self, a, b):
        return self.check(a) + self.check(b)

    def sub(self, a, b):
        return self.check(a) - self.check(b)

    def neg(self, a):
        return -self.check(a)

    def mul(self, a, b):
        return self.check(a) * self.check(b)

    def div(self, a, b):
        if self.check(b) == 0:
            raise DivisionByZero("integer division by zero")
        q, r = divmod(self.check(a), b)
        if r:
            raise NotExact(f"{a} is not divisible by {b}")
        return q

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return int(text)
        except ValueError:
            raise RingError(f"not an integer: {text!r}") from None


class PrimeField(Ring):
    """Z/pZ with representatives in [0, p); p must fit one machine word."""

    tag = "zp"

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or p.bit_length() > WORD_BITS or not isprime(p):
            raise RingError(f"modulus {p} is not a word-size prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("zp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def from_int(self, k):
        return int(k) % self.p

    def check(self, a):
        if type(a) is not int or not 0 <= a < self.p:
            raise RingMismatch(f"{a!r} is not a reduced element of Z/{self.p}")
        return a

    def add(self, a, b):
        return (self.check(a) + self.check(b)) % self.p

    def sub(self, a, b):
        return (self.check(a) - self.check(b)) % self.p

    def neg(self, a):
        return -self.check(a) % self.p

    def mul(self, a, b):
        return self.check(a) * self.check(b) % self.p

    def div(self, a, b):
        if self.check(b) == 0:
            raise DivisionByZero(f"division by zero modulo {self.p}")
        return self.check(a) * pow(b, -1, self.p) % self.p

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return int(text) % self.p
        except ValueError:
            raise RingError(f"not an integer: {text!r}") from None

    def symmetric(self, a: int) -> int:
        return a - self.p if a > self.p // 2 else a


class PolynomialRing(Ring):
    """Z[x1, ..., xr]."""

    tag = "polyint"

    def __init__(self, nvars: int):
        if nvars < 1:
            raise RingError("polynomial ring needs at least one variable")
        self.nvars = nvars

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("polyint", self.nvars))

    def __repr__(self):
        return f"PolynomialRing({self.nvars})"

    @property
    def variables(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.nvars + 1)]

    def from_int(self, k):
        return Poly.constant(self.nvars, int(k))

    def check(self, a):
        if not isinstance(a, Poly) or a.nvars != self.nvars:
            raise RingMismatch(f"{a!r} is not an element of Z[x1..x{self.nvars}]")
        return a

    def add(self, a, b):
        return self.check(a) + self.check(b)

    def sub(self, a, b):
        return self.check(a) - self.check(b)

    def neg(self, a):
        return -self.check(a)

    def mul(self, a, b):
        return self.check(a) * self.check(b)

    def div(self, a, b):
        return self.check(a).divexact(self.check(b))

    def is_zero(self, a):
        return self.check(a).is_zero()

    def parse(self, text):
        return Poly.parse(text, self.nvars)


class CountingRing(Ring):
    """Delegates to ``inner`` and tallies one tick per ring operation.

    Operand size is ignored: a product of two huge minors costs the same as a
    product of two entries.  Each instance owns its tally, so concurrent runs
    must use separate wrappers.
    """

    def __init__(self, inner: Ring, counts: OpCounts | None = None):
        self.inner = inner
        self.counts = counts if counts is not None else OpCounts()
        self.tag = inner.tag

    def __eq__(self, other):
        return self.base == (other.base if isinstance(other, Ring) else other)

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        return f"CountingRing({self.inner!r})"

    @property
    def base(self):
        return self.inner.base

    def from_int(self, k):
        return self.inner.from_int(k)

    def check(self, a):
        return self.inner.check(a)

    def add(self, a, b):
        self.counts.addsub += 1
        return self.inner.add(a, b)

    def sub(self, a, b):
        self.counts.addsub += 1
        return self.inner.sub(a, b)

    def neg(self, a):
        self.counts.addsub += 1
        return self.inner.neg(a)

    def mul(self, a, b):
        self.counts.mul += 1
        return self.inner.mul(a, b)

    def div(self, a, b):
        self.counts.div += 1
        return self.inner.div(a, b)

    def is_zero(self, a):
        return self.inner.is_zero(a)

    def format(self, a):
        return self.inner.format(a)

    def parse(self, text):
        return self.inner.parse(text)

    def __getattr__(self, name):
        # expose ring-specific attributes such as ``p`` or ``nvars``
        if name == "inner":
            raise AttributeError(name)
        return getattr(self.inner, name)


def audit_counts(run: Callable[[Ring], Any], ring: Ring) -> OpCounts:
    """Run ``run(counting_ring)`` and return the operations it performed."""
    counter = CountingRing(ring)
    run(counter)
    return counter.counts


def ring_from_tag(kind: str, arg: Any = None) -> Ring:
    """Build a ring from its file-format tag (``int``, ``zp``, ``polyint``)."""
    if kind == "int":
        return IntegerRing()
    if kind == "zp":
        return PrimeField(int(arg))
    if kind == "polyint":
        return PolynomialRing(int(arg))
    raise RingError(f"unknown ring {kind!r}")
