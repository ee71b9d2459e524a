from math import factorial, prod
import random

import pytest
from hypothesis import given, strategies as st

from qvol.constructions import (EXAMPLE_FOREST, EXAMPLE_FOREST_A, Forest, andrews_askey_check,
                                build_forest_Fa, build_schur_poset, build_selberg_poset, carlitz_series,
                                check_forest_hooks, check_schur_interlacing, check_schur_poset,
                                des_maj_sum, descent_pochhammer_check, dirichlet_check,
                                forest_from_parents, forests_up_to_iso, majdes1_rhs, majdes2_rhs,
                                maj_selberg_closed_form, posets_isomorphic, qbeta_check, qbeta_via_chain,
                                schur_delta_symbolic, schur_poset_shift_isomorphic, selberg_size,
                                verify_attach_chain, verify_happy_cat, verify_interlacing,
                                verify_scaredy_cat)
from qvol.mpoly import MLaurent, Partition, X
from qvol.poset import Poset, count_linear_extensions, maj_gf, random_poset
from qvol.qalg import QPoly, QRat


@st.composite
def forests(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    parents = [draw(st.one_of(st.none(), st.integers(i + 1, n))) if i < n else None
               for i in range(1, n + 1)]
    return forest_from_parents(parents)


@given(forests(), st.data())
def test_forest_integral_is_inverse_hook_product(F, data):
    a = data.draw(st.lists(st.integers(0, 2), min_size=F.n, max_size=F.n))
    assert check_forest_hooks(F, a).equal
    assert check_forest_hooks(F, a, method="direct").equal


@given(forests(7))
def test_forest_hook_formula_at_q_one(F):
    # n! / prod hooks counts linear extensions
    assert count_linear_extensions(F.poset) * prod(F.hooks) == factorial(F.n)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 9), (5, 20)])
def test_rooted_forest_counts(n, count):
    assert len(forests_up_to_iso(n)) == count


def test_worked_forest_example():
    assert check_forest_hooks(EXAMPLE_FOREST, EXAMPLE_FOREST_A).equal
    assert build_forest_Fa(EXAMPLE_FOREST, EXAMPLE_FOREST_A).n == 9 + sum(EXAMPLE_FOREST_A)
    with pytest.raises(ValueError):
        Forest(Poset(3, ((1, 2), (1, 3))))


def small_natural_poset(seed, n):
    return random_poset(n, random.Random(seed), density=0.5)


@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(0, 2), st.data())
def test_chain_attachment_lemmas(seed, n, m, data):
    P = small_natural_poset(seed, n)
    t = data.draw(st.integers(1, n))
    assert verify_scaredy_cat(P, t, m).equal
    assert verify_happy_cat(P, t, m).equal


@given(st.integers(0, 10 ** 6), st.data())
def test_attach_chain_between_related_elements(seed, data):
    P = Poset(3, ((1, 2),)) if seed % 2 else Poset.chain([1, 2, 3])
    m = data.draw(st.integers(1, 3))
    rho = tuple(data.draw(st.permutations(range(1, m + 1))))
    assert verify_attach_chain(P, 1, 2, m, rho).equal


@pytest.mark.parametrize("parts", [(), (1,), (2,), (1, 1), (2, 1)])
def test_interlacing_inside_a_poset(parts):
    P = Poset.chain([1, 2])
    assert verify_interlacing(P, [1, 2], Partition(parts)).equal


@given(st.integers(0, 6), st.integers(0, 6))
def test_q_beta(n, m):
    c = qbeta_check(n, m)
    assert c.equal
    assert qbeta_via_chain(n, m) == c.rhs


@given(st.lists(st.integers(0, 2), min_size=2, max_size=4))
def test_dirichlet(k):
    assert dirichlet_check(k).equal


@given(st.integers(0, 2), st.integers(0, 3), st.data())
def test_andrews_askey_when_k2_below_s(r, s, data):
    k1 = data.draw(st.integers(0, r))
    k2 = data.draw(st.integers(0, max(s - 1, 0)))
    u, v = data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))
    assert andrews_askey_check(r, s, k1, k2, QRat.qpow(u), QRat.qpow(v)).equal


def test_andrews_askey_symbolic_bounds():
    assert andrews_askey_check(1, 2, 1, 1).equal


def test_andrews_askey_breaks_when_k2_equals_s():
    c = andrews_askey_check(0, 1, 0, 1, a=MLaurent())
    b = X("b")
    assert c.lhs == b * QRat(QPoly([-1, 1, 1]), QPoly([0, 1, 1]))
    assert c.rhs == b * QRat(QPoly([0, 0, 1]), QPoly([1, 1]))


@pytest.mark.parametrize("n", range(1, 5))
def test_descent_pochhammer_symbolic(n):
    assert descent_pochhammer_check(n).equal


@pytest.mark.parametrize("n", range(1, 5))
def test_carlitz_forms(n):
    t = X("t")
    assert des_maj_sum(n, t) == majdes2_rhs(n, t)
    assert carlitz_series(n, n) == des_maj_sum(n, t)
    for k in range(n + 1):
        assert des_maj_sum(n, QRat.qpow(-k)) == majdes1_rhs(n, k)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("parts", [(), (1,), (2, 1), (3, 1), (2, 2)])
def test_schur_poset_shift(n, parts):
    lam = Partition(parts)
    if len(lam) > n - 1:
        with pytest.raises(ValueError):
            schur_poset_shift_isomorphic(n, lam)
    else:
        assert schur_poset_shift_isomorphic(n, lam)


def test_schur_poset_size():
    assert build_schur_poset(5, Partition((4, 3, 1))).poset0.n == 23


def test_isomorphism_ignores_labels():
    P = Poset(3, ((1, 3), (2, 3)))
    assert posets_isomorphic(P, P.relabel((3, 1, 2)))
    assert not posets_isomorphic(P, P.dual())


@pytest.mark.parametrize("n,lam,mu", [(2, (), ()), (2, (1,), (1,)), (2, (2,), (1, 1)), (3, (1,), (2,)),
                                      (3, (2, 1), ()), (2, (1, 1), (1,))])
def test_schur_poset_volume(n, lam, mu):
    assert check_schur_poset(n, Partition(lam), Partition(mu)).equal


@pytest.mark.parametrize("n,lam", [(2, ()), (2, (1,)), (2, (1, 1)), (3, ()), (3, (1,))])
def test_schur_nested_interlacing(n, lam):
    assert schur_delta_symbolic(n, Partition(lam)).equal
    assert check_schur_interlacing(Partition(lam), n).equal


@pytest.mark.parametrize("n,r,s,m", [(1, 0, 0, 1), (1, 2, 1, 1), (2, 0, 0, 1), (2, 1, 0, 1), (2, 0, 0, 2)])
def test_selberg_poset(n, r, s, m):
    SP = build_selberg_poset(n, r, s, m)
    assert SP.N == selberg_size(n, r, s, m)
    assert QRat(maj_gf(SP.poset)) == maj_selberg_closed_form(n, r, s, m)
