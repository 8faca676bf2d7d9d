"""Sparse multivariate polynomials with integer coefficients.

A polynomial is a mapping from exponent vectors to nonzero integer
coefficients.  Terms are ordered graded-lexicographically (total degree
first, ties broken lexicographically with x1 > x2 > ...), which fixes both
the canonical text form and the leading term used by exact division.

    >>> p = Poly.parse("x1 + 1", 1) * Poly.parse("x1 - 1", 1)
    >>> str(p)
    'x1^2 - 1'
    >>> str(p.divexact(Poly.parse("x1+1", 1)))
    'x1 - 1'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import DivisionByZero, NotExact, RingError, RingMismatch

Exps = tuple[int, ...]


def grlex_key(e: Exps) -> tuple[int, Exps]:
    return (sum(e), e)


class Poly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exps, int] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise RingMismatch(f"exponent vector {e} has wrong length for {nvars} variables")
            if c:
                clean[e] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exps, int]) -> Poly:
        # terms must already be free of zero coefficients
        p = cls.__new__(cls)
        p.nvars, p._terms, p._hash = nvars, terms, None
        return p

    @classmethod
    def constant(cls, nvars: int, c: int) -> Poly:
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, index: int) -> Poly:
        """The variable x_index (1-based)."""
        if not 1 <= index <= nvars:
            raise RingError(f"variable x{index} not in x1..x{nvars}")
        e = [0] * nvars
        e[index - 1] = 1
        return cls._raw(nvars, {tuple(e): 1})

    # -- inspection ---------------------------------------------------------

    def terms(self) -> list[tuple[Exps, int]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def leading_term(self) -> tuple[Exps, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def evaluate(self, point: Iterable[int]) -> int:
        pt = tuple(point)
        total = 0
        for e, c in self._terms.items():
            v = c
            for x, k in zip(pt, e):
                v *= x**k
            total += v
        return total

    # -- arithmetic ---------------------------------------------------------

    def _same(self, other: Poly) -> None:
        if not isinstance(other, Poly) or other.nvars != self.nvars:
            raise RingMismatch("polynomials over different variable sets")

    def __add__(self, other: Poly) -> Poly:
        self._same(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        self._same(other)
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._same(other)
        out: dict[Exps, int] = {}
        # classical term-by-term product
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def scale(self, c: int) -> Poly:
        if not c:
            return Poly._raw(self.nvars, {})
        return Poly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def divexact(self, other: Poly) -> Poly:
        """Quotient q with q*other == self; NotExact if there is none.

        Long division by the leading term.  Whenever an exact quotient exists
        its leading term divides the leading term of every partial remainder,
        so failing to divide one is proof of inexactness.
        """
        self._same(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        le, lc = other.leading_term()
        rem = dict(self._terms)
        quot: dict[Exps, int] = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, le))
            if min(shift) < 0 or c % lc:
                raise NotExact(f"{self} is not divisible by {other}")
            q = c // lc
            quot[shift] = q
            for oe, oc in other._terms.items():
                te = tuple(a + b for a, b in zip(oe, shift))
                v = rem.get(te, 0) - q * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return Poly._raw(self.nvars, quot)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.terms()):
            mono = "*".join(
                f"x{v + 1}" if k == 1 else f"x{v + 1}^{k}" for v, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def compact(self) -> str:
        """Canonical form without blanks, usable as a single whitespace-free token."""
        return str(self).replace(" ", "")

    # -- parsing ------------------------------------------------------------

    _TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\^)|(\*)|([+-]))")

    @classmethod
    def parse(cls, text: str, nvars: int) -> Poly:
        """Parse ``3*x1^2*x2 - 5*x3 + 7``-style text over x1..x_nvars."""
        tokens: list[tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = cls._TOKEN.match(stripped, pos)
            if not m:
                raise RingError(f"unexpected character {stripped[pos]!r} at offset {pos}", col=pos + 1)
            num, var, caret, star, sign = m.groups()
            at = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
            if num is not None:
                tokens.append(("int", num, at))
            elif var is not None:
                tokens.append(("var", var, at))
            elif caret:
                tokens.append(("^", caret, at))
            elif star:
                tokens.append(("*", star, at))
            else:
                tokens.append(("sign", sign, at))
            pos = m.end()
        if not tokens:
            raise RingError("empty polynomial")

        total = cls._raw(nvars, {})
        i = 0

        def fail(msg: str, k: int) -> RingError:
            off = tokens[k][2] if k < len(tokens) else len(stripped)
            return RingError(msg, col=off + 1)

        first = True
        while i < len(tokens):
            sign = 1
            if tokens[i][0] == "sign":
                sign = -1 if tokens[i][1] == "-" else 1
                i += 1
            elif not first:
                raise fail("expected '+' or '-' between terms", i)
            first = False
            coeff = sign
            exps = [0] * nvars
            expect_factor = True
            while i < len(tokens) and tokens[i][0] != "sign":
                kind, val, _ = tokens[i]
                if not expect_factor:
                    if kind != "*":
                        raise fail("expected '*' between factors", i)
                    i += 1
                    expect_factor = True
                    continue
                if kind == "int":
                    coeff *= int(val)
                    i += 1
                elif kind == "var":
                    idx = int(val)
                    if not 1 <= idx <= nvars:
                        raise fail(f"variable x{idx} not in x1..x{nvars}", i)
                    power = 1
                    i += 1
                    if i < len(tokens) and tokens[i][0] == "^":
                        if i + 1 >= len(tokens) or tokens[i + 1][0] != "int":
                            raise fail("expected integer exponent after '^'", i + 1)
                        power = int(tokens[i + 1][1])
                        i += 2
                    exps[idx - 1] += power
                else:
                    raise fail(f"unexpected {val!r}", i)
                expect_factor = False
            if expect_factor:
                raise fail("missing term", i)
            total = total + cls._raw(nvars, {tuple(exps): coeff} if coeff else {})
        return total
