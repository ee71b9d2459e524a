from collections import Counter
from itertools import permutations
from math import factorial
import random

import pytest
from hypothesis import given, strategies as st

from qvol.poset import (CapExceeded, Poset, PosetError, all_labeled_posets, count_extensions_recursive,
                        count_linear_extensions, des, des_maj_table, inv, inverse_perm, linear_extensions,
                        maj, maj_gf, maj_gf_enum, posets_up_to_iso, ppartition_gf_bounded,
                        ppartitions_bruteforce, random_poset)
from qvol.qalg import QPoly, QRat, expand_series, q_factorial, qq_poch


@st.composite
def posets(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 10 ** 6))
    return random_poset(n, random.Random(seed), density=draw(st.sampled_from([0.2, 0.4, 0.7])))


@st.composite
def labeled(draw, max_n=5):
    P = draw(posets(max_n))
    return P, tuple(draw(st.permutations(range(1, P.n + 1))))


def brute_extensions(P, omega):
    """Words omega(t_1)..omega(t_n) over orderings t respecting P."""
    for t in permutations(range(1, P.n + 1)):
        pos = {x: k for k, x in enumerate(t)}
        if all(pos[i] < pos[j] for i, j in P.strict_pairs()):
            yield tuple(omega[x - 1] for x in t)


def test_statistics():
    w = (3, 1, 4, 2, 5)
    assert des(w) == 2 and maj(w) == 1 + 3 and inv(w) == 3
    assert inverse_perm((2, 3, 1)) == (3, 1, 2)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_isomorphism_classes(n, count):
    assert len(posets_up_to_iso(n)) == count


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 19)])
def test_labeled_poset_counts(n, count):
    assert len(all_labeled_posets(n)) == count


@given(posets())
def test_extension_counts_agree(P):
    brute = sum(1 for _ in brute_extensions(P, range(1, P.n + 1)))
    assert count_linear_extensions(P) == brute == count_extensions_recursive(P)


@given(labeled())
def test_maj_generating_function(Pw):
    P, w = Pw
    words = list(brute_extensions(P, w))
    assert sorted(linear_extensions(P, w)) == sorted(words)
    assert maj_gf(P, w) == maj_gf_enum(P, w)
    counts = Counter(maj(x) for x in words)
    assert maj_gf(P, w) == QPoly([counts.get(k, 0) for k in range(max(counts) + 1)])


@given(labeled())
def test_des_maj_table_sums_to_maj(Pw):
    P, w = Pw
    total = QPoly()
    for _, p in des_maj_table(P, w).items():
        total = total + p
    assert total == maj_gf(P, w)


@pytest.mark.parametrize("n", range(1, 6))
def test_antichain_gives_q_factorial(n):
    assert maj_gf(Poset.antichain(n)) == q_factorial(n)
    assert maj_gf(Poset.chain(list(range(1, n + 1)))) == QPoly([1])


@given(labeled(4), st.integers(0, 2), st.integers(1, 3))
def test_bounded_ppartitions_dp_matches_loops(Pw, lo, width):
    P, w = Pw
    lower, upper = [lo] * P.n, [lo + width] * P.n
    counts = Counter(sum(s) for s in ppartitions_bruteforce(P, w, lower, upper))
    want = QPoly([counts.get(k, 0) for k in range(max(counts) + 1)]) if counts else QPoly()
    assert ppartition_gf_bounded(P, w, lower, upper) == want


@given(labeled(4))
def test_fundamental_lemma(Pw):
    # sum over all (P, omega)-partitions of q^|sigma| is maj_gf / (q;q)_n
    P, w = Pw
    D = 10
    lhs = ppartition_gf_bounded(P, w, [0] * P.n, [D + 1] * P.n)
    rhs = expand_series(QRat(maj_gf(P, w), qq_poch(P.n)), D)
    assert expand_series(QRat(lhs), D) == rhs


def test_cycles_and_bad_labels_rejected():
    with pytest.raises(PosetError):
        Poset(2, ((1, 2), (2, 1)))
    with pytest.raises(PosetError):
        Poset(2, ((1, 3),))
    with pytest.raises(PosetError):
        maj_gf(Poset.antichain(3), (1, 1, 2))


def test_extension_cap():
    with pytest.raises(CapExceeded):
        list(linear_extensions(Poset.antichain(6), None, cap=100))
    assert count_linear_extensions(Poset.antichain(7)) == factorial(7)


def test_json_round_trip():
    P = Poset(4, ((1, 3), (2, 3), (3, 4)))
    Q, w = Poset.from_json(P.to_json((2, 1, 3, 4)))
    assert Q.covers == P.covers and w == (2, 1, 3, 4)
