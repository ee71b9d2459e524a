from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from qvol.qalg import (ExpansionError, QPoly, QRat, QSeries, expand_series, poly_gcd,
                       q_binomial, q_factorial, q_int, q_number, q_pochhammer_scalar, qq_poch)

coeffs = st.lists(st.integers(-6, 6), min_size=0, max_size=6)
nonzero = coeffs.filter(lambda c: any(c))
points = st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=7)


def ev(p: QPoly, x):
    return sum(Fraction(c) * x ** k for k, c in enumerate(p.coeffs))


@given(coeffs, coeffs, points)
def test_poly_ring_ops_commute_with_evaluation(a, b, x):
    A, B = QPoly(a), QPoly(b)
    assert ev(A + B, x) == ev(A, x) + ev(B, x)
    assert ev(A - B, x) == ev(A, x) - ev(B, x)
    assert ev(A * B, x) == ev(A, x) * ev(B, x)


@given(nonzero, nonzero)
def test_gcd_divides_both(a, b):
    A, B = QPoly(a), QPoly(b)
    g = poly_gcd(A, B)
    assert g.divides(A) and g.divides(B)


@given(nonzero, nonzero, nonzero, points)
def test_rational_arithmetic_matches_evaluation(a, b, c, x):
    A, B, C = QPoly(a), QPoly(b), QPoly(c)
    if ev(B, x) == 0 or ev(C, x) == 0:
        return
    r, s = QRat(A, B), QRat(C, B)
    assert r.evaluate(x) == ev(A, x) / ev(B, x)
    assert (r * s).evaluate(x) == r.evaluate(x) * s.evaluate(x)
    assert (r + s).evaluate(x) == r.evaluate(x) + s.evaluate(x)
    assert (r / QRat(C)).evaluate(x) == r.evaluate(x) / ev(C, x)


@given(nonzero, nonzero, st.integers(-5, 5), st.integers(-3, 3).filter(bool))
def test_qpower_fast_path_agrees_with_generic_product(a, b, k, c):
    r = QRat(QPoly(a), QPoly(b))
    m = QRat.qpow(k) * c
    slow = QRat(r.num * m.num, r.den * m.den)
    assert r * m == slow
    assert m * r == slow


@given(nonzero, nonzero)
def test_canonical_form_is_structural(a, b):
    r = QRat(QPoly(a), QPoly(b))
    assert QRat(r.num * QPoly([2, 1]), r.den * QPoly([2, 1])) == r
    assert r.den.lead > 0
    assert QRat.from_json(r.to_json()) == r


def test_negative_shift_drops_only_zeros():
    assert QPoly([0, 0, 1, 2]).shift(-2) == QPoly([1, 2])
    with pytest.raises(ArithmeticError):
        QPoly([1, 2]).shift(-1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QRat(1, 0)


@pytest.mark.parametrize("n", range(8))
def test_q_factorial_at_one(n):
    assert q_factorial(n).at_one() == factorial(n)
    assert q_number(n).at_one() == n


@given(st.integers(0, 10), st.integers(-1, 11))
def test_q_binomial_pascal_and_limit(n, k):
    assert q_binomial(n, k).at_one() == (comb(n, k) if 0 <= k <= n else 0)
    if n >= 1 and 1 <= k <= n - 1:
        rhs = q_binomial(n - 1, k - 1) + q_binomial(n - 1, k) * QPoly.monomial(k)
        assert q_binomial(n, k) == rhs


@given(st.integers(0, 9), st.integers(0, 9))
def test_q_binomial_as_factorial_ratio(n, k):
    if k > n:
        return
    lhs = QRat(q_binomial(n, k)) * QRat(q_factorial(k)) * QRat(q_factorial(n - k))
    assert lhs == QRat(q_factorial(n))


def test_small_values():
    assert q_number(3) == QPoly([1, 1, 1])
    assert q_binomial(4, 2) == QPoly([1, 1, 2, 1, 1])
    assert qq_poch(2) == QPoly([1, -1, -1, 1])
    assert q_int(-2) == QRat(QPoly([-1, -1]), QPoly([0, 0, 1]))


@given(st.integers(-4, 4), st.integers(0, 5))
def test_pochhammer_scalar_as_product(k, n):
    out = QRat(1)
    for i in range(n):
        out = out * (QRat(1) - QRat.qpow(k + i))
    assert q_pochhammer_scalar(QRat.qpow(k), n) == out


def test_series_of_geometric_and_products():
    s = expand_series(QRat(1, QPoly([1, -1])), 10)
    assert list(s.coeffs) == [1] * 11
    r = QRat(QPoly([1, 2]), QPoly([1, -1, -1]))
    t = QRat(QPoly([3]), QPoly([1, 0, -2]))
    assert expand_series(r * t, 12) == expand_series(r, 12) * expand_series(t, 12)


def test_series_needs_nonzero_constant_term():
    with pytest.raises(ExpansionError):
        expand_series(QRat(1, QPoly([0, 1])), 3)
    assert isinstance(QSeries.from_counts({0: 2, 5: 1}, 3), QSeries)
