import random

import pytest
from hypothesis import given, strategies as st

from qvol.constructions import qfact
from qvol.ehrhart import (EhrhartError, QEhrhartPolynomial, chapoton_volume, eq_ehrhart,
                          eq_ehrhart_bruteforce, eq_ehrhart_lattice, eq_ehrhart_maj, eq_ehrhart_order_polytope,
                          eq_ehrhart_volume, ehrhart_series, ehrhart_series_integral_check,
                          ehrhart_series_matches, fit_ehrhart_polynomial, fit_in_qint,
                          leading_coefficient_formula, limit_coefficient, macmahon_check,
                          qbinom_series_check)
from qvol.mpoly import MLaurent
from qvol.poset import Poset, all_labeled_posets, random_poset
from qvol.qalg import QPoly, QRat, q_int
from qvol.qint import qint_order_polytope

ONE = MLaurent.const(1)


@st.composite
def any_poset(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    P = random_poset(n, random.Random(draw(st.integers(0, 10 ** 6))), density=0.4)
    return P.relabel(tuple(draw(st.permutations(range(1, n + 1)))))


def volume(P):
    return qint_order_polytope(ONE, P, method="direct")


@given(any_poset(), st.integers(0, 3))
def test_lattice_sum_three_ways(P, m):
    lat = eq_ehrhart_lattice(P, m)
    assert eq_ehrhart_maj(P, m) == lat == eq_ehrhart_bruteforce(P, m)
    assert eq_ehrhart(P, m) == lat
    assert eq_ehrhart_volume(P, m, "sum") == QRat(lat)


@given(any_poset(3), st.integers(0, 3))
def test_box_volume_by_integration(P, m):
    assert eq_ehrhart_volume(P, m, "direct") == QRat(eq_ehrhart_lattice(P, m))


@given(any_poset(), st.integers(0, 3))
def test_natural_labels_give_dual_order_polytope(P, m):
    if P.is_natural():
        assert eq_ehrhart(P, m) == eq_ehrhart_order_polytope(P.dual(), m)


def test_negative_dilation_rejected():
    with pytest.raises(ValueError):
        eq_ehrhart(Poset.antichain(1), -1)


@pytest.mark.parametrize("P", all_labeled_posets(3), ids=lambda P: str(P.covers))
def test_fit_limit_and_top_coefficient(P):
    E = fit_ehrhart_polynomial(P)
    for m in range(8):
        assert E(m) == QRat(eq_ehrhart(P, m))
    assert limit_coefficient(E) == volume(P)
    assert E.leading == leading_coefficient_formula(P)


def test_top_coefficient_is_not_the_volume():
    E = fit_ehrhart_polynomial(Poset.antichain(1))
    assert E.coeffs == (QRat(1), QRat.qpow(1))
    assert volume(Poset.antichain(1)) == QRat(1)
    E = fit_ehrhart_polynomial(Poset.chain([1, 2]))
    assert E.leading == QRat.qpow(3) / q_int(2)
    assert volume(Poset.chain([1, 2])) == QRat(1) / q_int(2)


@pytest.mark.parametrize("P", all_labeled_posets(3), ids=lambda P: str(P.covers))
def test_order_polytope_top_coefficient(P):
    if P.is_natural():
        assert chapoton_volume(P.dual()) == qfact(P.n) * leading_coefficient_formula(P)


def test_fit_catches_a_non_polynomial():
    with pytest.raises(EhrhartError):
        fit_in_qint(lambda m: QPoly([1]) if m < 3 else QPoly([2]), 1, 3)


def test_polynomial_evaluation():
    E = QEhrhartPolynomial((QRat(1), QRat(2)))
    assert E(3) == 1 + 2 * q_int(3) and E.degree == 1


@given(any_poset())
def test_series_coefficients(P):
    assert ehrhart_series_matches(P, 5)


@pytest.mark.parametrize("P", all_labeled_posets(2) + [Poset.chain([1, 2, 3]), Poset(3, ((1, 2),))],
                         ids=lambda P: f"{P.n}:{P.covers}")
@pytest.mark.parametrize("s", [1, 2, 3])
def test_series_at_q_power_is_an_integral(P, s):
    a, b = ehrhart_series_integral_check(P, s)
    assert a == b


@pytest.mark.parametrize("n", range(1, 5))
def test_antichain_gives_powers_of_q_numbers(n):
    assert macmahon_check(n)
    assert ehrhart_series(Poset.antichain(n)).n == n


@pytest.mark.parametrize("n,d", [(1, 0), (2, 1), (3, 2), (3, 0)])
def test_q_binomial_series(n, d):
    assert qbinom_series_check(n, d)
