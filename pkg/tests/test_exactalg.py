"""Exact field arithmetic and Sturm-based sign analysis."""

from fractions import Fraction

import pytest

from semind.exactalg import (
    HALF_SQRT2,
    Poly,
    Q2,
    SQRT2,
    count_roots_open,
    isolate_roots,
    poly_eval,
    poly_nonnegative_on,
    poly_nonpositive_on,
    poly_squarefree,
)


def test_field_arithmetic():
    x = SQRT2 - Q2.of(1)
    y = SQRT2 + Q2.of(1)
    assert x * y == Q2.of(1)
    assert x.inverse() == y
    assert (x / x) == Q2.of(1)
    assert SQRT2 * SQRT2 == Q2.of(2)
    assert HALF_SQRT2 * SQRT2 == Q2.of(1)


def test_sign_analysis():
    assert (SQRT2 - Q2.of(1)).sign() == 1
    assert (Q2.of(1) - SQRT2).sign() == -1
    assert (SQRT2 - Q2.of(Fraction(3, 2))).sign() == -1  # sqrt2 < 1.5
    assert (SQRT2 - Q2.of(Fraction(7, 5))).sign() == 1  # sqrt2 > 1.4
    assert Q2.of(0).sign() == 0
    assert HALF_SQRT2 < Q2.of(Fraction(71, 100))
    assert HALF_SQRT2 > Q2.of(Fraction(70, 100))


def test_poly_basics():
    names = ("a", "B")
    a = Poly.var(names, "a")
    B = Poly.var(names, "B")
    p = (a + B) * (a - B)
    assert p == a * a - B * B
    q = p.substitute(B=SQRT2)
    assert q == a * a - Poly.const(names, 2)
    cs = q.univariate("a")
    assert poly_eval(cs, SQRT2).sign() == 0
    assert poly_eval(cs, Q2.of(2)) == Q2.of(2)


def _upoly(*coeffs):
    return [Q2.of(Fraction(c)) for c in coeffs]


def test_root_counting():
    # (x - 1)(x - 2)(x - 3) = x^3 - 6x^2 + 11x - 6
    p = _upoly(-6, 11, -6, 1)
    assert count_roots_open(p, Q2.of(0), Q2.of(4)) == 3
    assert count_roots_open(p, Q2.of(Fraction(3, 2)), Q2.of(4)) == 2
    assert count_roots_open(p, Q2.of(1), Q2.of(3)) == 1  # open: excludes 1 and 3
    # x^2 - 2 has the field element sqrt2 as root
    q = _upoly(-2, 0, 1)
    assert count_roots_open(q, Q2.of(1), Q2.of(2)) == 1
    assert count_roots_open(q, SQRT2, Q2.of(2)) == 0


def test_isolate_roots():
    p = _upoly(-6, 11, -6, 1)
    roots = isolate_roots(p, Q2.of(0), Q2.of(4))
    assert len(roots) == 3
    vals = sorted(float((a + b)) / 2 for a, b in roots)
    assert all(abs(v - t) < 1 for v, t in zip(vals, (1, 2, 3)))


def test_nonpositive_decisions():
    # -(x - 1/2)^2 <= 0 everywhere, with a double root inside
    p = _upoly(Fraction(-1, 4), 1, -1)
    assert poly_nonpositive_on(p, Q2.of(0), Q2.of(1))
    assert not poly_nonnegative_on(p, Q2.of(0), Q2.of(1))
    # x(1 - x) >= 0 on [0, 1] but not nonpositive
    q = _upoly(0, 1, -1)
    assert poly_nonnegative_on(q, Q2.of(0), Q2.of(1))
    assert not poly_nonpositive_on(q, Q2.of(0), Q2.of(1))
    # strictly positive at the right endpoint only when included
    r = _upoly(Fraction(-1, 2), 1)  # x - 1/2
    assert poly_nonpositive_on(r, Q2.of(0), Q2.of(Fraction(1, 2)))
    assert not poly_nonpositive_on(r, Q2.of(0), Q2.of(1))
    assert poly_nonpositive_on(r, Q2.of(0), Q2.of(Fraction(1, 2)), include_hi=False)
    # zero polynomial
    assert poly_nonpositive_on([], Q2.of(0), Q2.of(1))


def test_nonpositive_with_sqrt2_endpoints():
    # p(x) = x^2 - 2 is nonpositive exactly on [-sqrt2, sqrt2]
    p = _upoly(-2, 0, 1)
    assert poly_nonpositive_on(p, Q2.of(0), SQRT2)
    assert not poly_nonpositive_on(p, Q2.of(0), Q2.of(Fraction(3, 2)))
    sf = poly_squarefree(_upoly(4, -4, 1))  # (x-2)^2 -> x-2
    assert len(sf) == 2
