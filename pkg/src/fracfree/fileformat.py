"""Plain-text system files.

Grammar (blank lines and lines starting with ``#`` are ignored)::

    ring int                  | ring zp <prime> | ring polyint x1 x2 ... xr
    dims <n> <m>
    <n lines of m whitespace-separated entries>

Polynomial entries are written without blanks (``x1^2-1``).  ``serialize``
emits the canonical form, which ``parse_system`` reads back unchanged.
"""

from __future__ import annotations

import re

from .errors import DimensionError, ParseError, RingError, SystemSyntaxError
from .matrix import AugmentedMatrix
from .rings import IntegerRing, PolynomialRing, PrimeField, Ring

_INT = re.compile(r"[+-]?\d+\Z")


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _parse_ring(toks: list[tuple[str, int]], lineno: int) -> Ring:
    if len(toks) < 2:
        raise SystemSyntaxError("expected 'ring <kind> ...'", lineno, 1)
    kind, col = toks[1]
    if kind == "int":
        if len(toks) != 2:
            raise SystemSyntaxError("'ring int' takes no arguments", lineno, toks[2][1])
        return IntegerRing()
    if kind == "zp":
        if len(toks) != 3 or not _INT.match(toks[2][0]):
            raise SystemSyntaxError("expected 'ring zp <prime>'", lineno, col)
        try:
            return PrimeField(int(toks[2][0]))
        except RingError as e:
            raise RingError(str(e), lineno, toks[2][1]) from None
    if kind == "polyint":
        names = [t for t, _ in toks[2:]]
        if not names:
            raise SystemSyntaxError("expected variable names after 'ring polyint'", lineno, col)
        for k, (name, c) in enumerate(toks[2:], start=1):
            if name != f"x{k}":
                raise RingError(f"variables must be x1..xr in order, got {name!r}", lineno, c)
        return PolynomialRing(len(names))
    raise SystemSyntaxError(f"unknown ring {kind!r}", lineno, col)


def parse_system(text: str) -> AugmentedMatrix:
    lines = [
        (no, line)
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise SystemSyntaxError("empty system file")
    no, line = lines[0]
    toks = _tokens(line)
    if toks[0][0] != "ring":
        raise SystemSyntaxError("first line must be 'ring ...'", no, toks[0][1])
    ring = _parse_ring(toks, no)

    if len(lines) < 2:
        raise SystemSyntaxError("missing 'dims' line", no + 1)
    no, line = lines[1]
    toks = _tokens(line)
    if toks[0][0] != "dims" or len(toks) != 3 or not all(_INT.match(t) for t, _ in toks[1:]):
        raise SystemSyntaxError("expected 'dims <n> <m>'", no, toks[0][1])
    n, m = int(toks[1][0]), int(toks[2][0])
    if not 1 <= n < m:
        raise DimensionError(f"need 1 <= n < m, got n={n}, m={m}", no, toks[1][1])

    body = lines[2:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else no + 1)
        raise DimensionError(f"expected {n} rows, found {len(body)}", where)
    rows = []
    for no, line in body:
        toks = _tokens(line)
        if len(toks) != m:
            raise DimensionError(f"expected {m} entries, found {len(toks)}", no, 1)
        row = []
        for tok, col in toks:
            if isinstance(ring, PolynomialRing):
                try:
                    row.append(ring.parse(tok))
                except RingError as e:
                    inner = (e.col or 1) - 1
                    raise RingError(str(e).split(": ", 1)[-1], no, col + inner) from None
            else:
                if not _INT.match(tok):
                    raise SystemSyntaxError(f"not an integer: {tok!r}", no, col)
                row.append(ring.parse(tok))
        rows.append(row)
    return AugmentedMatrix(ring, rows)


def ring_header(ring: Ring) -> str:
    R = ring.base
    if isinstance(R, IntegerRing):
        return "ring int"
    if isinstance(R, PrimeField):
        return f"ring zp {R.p}"
    if isinstance(R, PolynomialRing):
        return "ring polyint " + " ".join(R.variables)
    raise ParseError(f"no file format for {R!r}")


def format_entry(ring: Ring, v) -> str:
    if isinstance(ring.base, PolynomialRing):
        return v.compact()
    return str(v)


def serialize(A: AugmentedMatrix) -> str:
    out = [ring_header(A.ring), f"dims {A.n} {A.m}"]
    out += [" ".join(format_entry(A.ring, v) for v in row) for row in A.rows]
    return "\n".join(out) + "\n"
