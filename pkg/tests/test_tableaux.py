from itertools import product

import pytest
from hypothesis import given, strategies as st

from qvol.mpoly import Partition, partitions_upto
from qvol.qalg import QRat, QSeries, expand_series
from qvol.tableaux import (RPPShape, enumerate_gt, enumerate_rpp, gansner_closed_form, gansner_integral,
                           gf_gt, gf_rpp_fixed_rdiag, gf_shifted_trace, gf_square_arms, gf_square_weighted,
                           gf_trace_nu, rpp_fixed_rdiag_via_poset, rpp_from_rows, rpp_series,
                           shifted_trace_via_integral, square_arms_via_durfee, square_weighted_m1,
                           square_weighted_series, square_weighted_via_selberg, trace_gf_via_integral,
                           warnaar_closed_form, warnaar_integral)

D = 10


def brute_series(shape, degree, a=0):
    """Nested loops over all fillings with entries <= degree."""
    cells = list(shape.cells)
    cs = set(cells)
    counts: dict[int, int] = {}
    for fill in product(range(degree + 1), repeat=len(cells)):
        if sum(fill) > degree:
            continue
        T = dict(zip(cells, fill))
        if all(T[(i, j)] <= T[nb] for (i, j) in cells for nb in ((i + 1, j), (i, j + 1)) if nb in cs):
            tr = sum(v for (i, j), v in T.items() if i == j)
            e = sum(fill) + a * tr
            counts[e] = counts.get(e, 0) + 1
    return QSeries.from_counts(counts, degree)


SMALL = [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2)]


@pytest.mark.parametrize("parts", SMALL)
@pytest.mark.parametrize("a", [0, 1, 2])
def test_enumeration_matches_loops(parts, a):
    shape = RPPShape.normal(Partition(parts))
    assert rpp_series(shape, 8, a) == brute_series(shape, 8, a)


@pytest.mark.parametrize("n,parts", [(1, ()), (2, ()), (2, (1,)), (3, ())])
def test_shifted_enumeration_matches_loops(n, parts):
    shape = RPPShape.shifted(n, Partition(parts))
    assert rpp_series(shape, 7) == brute_series(shape, 7)


@pytest.mark.parametrize("parts", SMALL + [(3, 2, 1)])
@pytest.mark.parametrize("a", [0, 1, 2])
def test_trace_hook_product(parts, a):
    nu = Partition(parts)
    assert rpp_series(RPPShape.normal(nu), 12, a) == expand_series(gf_trace_nu(nu, a), 12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fixed_rdiag_two_routes_and_enumeration(n):
    for lam in partitions_upto(2, max_len=n):
        for mu in partitions_upto(2, max_len=n):
            closed = gf_rpp_fixed_rdiag(n, lam, mu)
            assert rpp_fixed_rdiag_via_poset(n, lam, mu) == closed
            assert rpp_series(RPPShape.shifted(n, lam), D, 0, mu) == expand_series(closed, D)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gt_patterns(n):
    for lam in partitions_upto(2, max_len=n):
        for mu in partitions_upto(2, max_len=n):
            g = gf_gt(n, lam, mu, 1)
            assert g == gf_gt(n, lam, mu, 2)
            cnt: dict[int, int] = {}
            for G in enumerate_gt(n, lam, mu, max_size=D):
                assert G.is_admissible()
                cnt[G.size] = cnt.get(G.size, 0) + 1
            assert QSeries.from_counts(cnt, D) == expand_series(g, D)


@pytest.mark.parametrize("n,lam,mu,rho", [(1, (), (), ()), (1, (1,), (2,), (1,)), (2, (1,), (), (1,)),
                                          (2, (), (1,), ()), (2, (1,), (1,), (1, 1))])
def test_square_with_arms(n, lam, mu, rho):
    lam, mu, rho = Partition(lam), Partition(mu), Partition(rho)
    closed = gf_square_arms(n, lam, mu, rho)
    assert square_arms_via_durfee(n, lam, mu, rho) == closed
    assert rpp_series(RPPShape.square(n, lam, mu), D, 0, rho) == expand_series(closed, D)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_schur_pair_integral(n, alpha):
    for lam in partitions_upto(2, max_len=n):
        for mu in partitions_upto(1, max_len=n):
            assert warnaar_integral(n, lam, mu, alpha) == warnaar_closed_form(n, lam, mu, alpha)
            a = alpha - 1
            assert trace_gf_via_integral(n, lam, mu, a) == gf_trace_nu(RPPShape.square(n, lam, mu).nu, a)


@pytest.mark.parametrize("n,parts", [(1, ()), (1, (2,)), (2, ()), (2, (1,)), (3, ())])
@pytest.mark.parametrize("a", [0, 1, 2])
def test_shifted_trace_integral_matches_enumeration(n, parts, a):
    lam = Partition(parts)
    enum = rpp_series(RPPShape.shifted(n, lam), D, a)
    assert enum == expand_series(shifted_trace_via_integral(n, lam, a), D)


@pytest.mark.parametrize("n,parts", [(1, ()), (1, (1,)), (2, ()), (2, (1,)), (3, ())])
def test_shifted_trace_product_without_trace(n, parts):
    lam = Partition(parts)
    assert gansner_integral(n, lam, 1) == gansner_closed_form(n, lam, 1)
    assert rpp_series(RPPShape.shifted(n, lam), D) == expand_series(gf_shifted_trace(n, lam, 0), D)


def test_shifted_trace_product_with_trace_disagrees():
    # the (2,1)* staircase: true series is 1/((1-x^2 q^3)(1-xq^2)(1-xq)) with x = q^a
    lam = Partition(())
    for a in (1, 2):
        truth = QRat(1) / ((1 - QRat.qpow(2 * a + 3)) * (1 - QRat.qpow(a + 2)) * (1 - QRat.qpow(a + 1)))
        assert expand_series(truth, D) == rpp_series(RPPShape.shifted(2, lam), D, a)
        assert gf_shifted_trace(2, lam, a) != truth
        assert gansner_integral(2, lam, a + 1) != gansner_closed_form(2, lam, a + 1)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (0, 2), (2, 1)])
@pytest.mark.parametrize("m", [1, 2])
def test_weighted_square(n, a, b, m):
    closed = gf_square_weighted(n, a, b, m)
    assert square_weighted_via_selberg(n, a, b, m) == closed
    assert square_weighted_series(n, a, b, m, D) == expand_series(closed, D)
    if m == 1:
        assert square_weighted_m1(n, a, b) == closed


@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_rpp_validity(vals):
    shape = RPPShape.normal(Partition((2, 2)))
    T = rpp_from_rows(shape, [vals[:2], vals[2:]])
    ok = vals[0] <= vals[1] and vals[2] <= vals[3] and vals[0] <= vals[2] and vals[1] <= vals[3]
    assert T.is_valid() == ok
    if ok:
        assert T in set(enumerate_rpp(shape, max_entry=3))
