from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracfree.errors import DivisionByZero, NotExact, RingError
from fracfree.polynomial import Poly

NV = 2


def polys(nvars: int = NV, max_terms: int = 4, max_deg: int = 3):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, st.integers(-20, 20), max_size=max_terms).map(
        lambda d: Poly(nvars, d)
    )


def x(i: int, nvars: int = NV) -> Poly:
    return Poly.var(nvars, i)


def c(k: int, nvars: int = NV) -> Poly:
    return Poly.constant(nvars, k)


def test_no_zero_terms_stored():
    p = Poly(2, {(1, 0): 3, (0, 1): 0, (0, 0): 0})
    assert p.terms() == [((1, 0), 3)]
    assert (x(1) - x(1)).is_zero()


def test_difference_of_squares():
    one = c(1, 1)
    X = x(1, 1)
    assert (X + one) * (X - one) == X * X - one


def test_exact_division_example():
    X, one = x(1, 1), c(1, 1)
    assert (X * X - one).divexact(X + one) == X - one


def test_not_exact_and_zero_divisor():
    X, one = x(1, 1), c(1, 1)
    with pytest.raises(NotExact):
        (X * X + one).divexact(X + one)
    with pytest.raises(NotExact):
        c(7).divexact(c(2))
    with pytest.raises(DivisionByZero):
        X.divexact(c(0, 1))


def test_canonical_text():
    p = Poly.parse("7 - 5*x3 + 3*x1^2*x2", 3)
    assert str(p) == "3*x1^2*x2 - 5*x3 + 7"
    assert p.compact() == "3*x1^2*x2-5*x3+7"
    assert str(Poly.parse("-x1 + x1", 1)) == "0"
    assert str(Poly.parse("-x2^2 + 1*x1", 2)) == "-x2^2 + x1"


@pytest.mark.parametrize("bad", ["x1^", "3x1", "x4", "x1**2", "", "x1 + + 2", "y1"])
def test_parse_errors(bad):
    with pytest.raises(RingError):
        Poly.parse(bad, 3)


def test_evaluate():
    p = Poly.parse("3*x1^2*x2 - 5*x2 + 7", 2)
    assert p.evaluate([2, 3]) == 3 * 4 * 3 - 15 + 7


@given(polys(), polys())
def test_divexact_inverts_mul(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


@given(polys())
def test_text_round_trip(p):
    s = str(p)
    q = Poly.parse(s, NV)
    assert q == p and str(q) == s
    assert Poly.parse(p.compact(), NV) == p


@given(polys(), polys(), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_evaluation_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt)


@given(polys(), polys())
def test_equal_means_equal_hash(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert (a + b) - b == a
