from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from qvol.selberg import (SelbergSpec, askey_closed_form, askey_direct, askey_iterated, classical_selberg,
                          closed_form_at_one, quotient_is_antisymmetric, selberg_closed_form,
                          selberg_direct, selberg_poset_volume, selberg_routes, selberg_via_poset,
                          small_poset_specs, split_factor_check)

SPECS = small_poset_specs(7)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"n{s.n}a{s.alpha}b{s.beta}m{s.m}")
def test_three_routes_agree(spec):
    routes = selberg_routes(spec)
    assert routes.agree, routes.values


@pytest.mark.parametrize("spec", [SelbergSpec(2, 1, 1, 1), SelbergSpec(2, 2, 1, 1), SelbergSpec(1, 3, 2, 1)])
def test_poset_volume_route(spec):
    assert selberg_poset_volume(spec) == selberg_closed_form(spec)
    assert selberg_via_poset(spec) == selberg_direct(spec)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 2))
def test_classical_limit(n, a, b, m):
    # the chain x1 <= ... <= xn is one of n! congruent pieces of the cube
    spec = SelbergSpec(n, a, b, m)
    assert closed_form_at_one(spec) * factorial(n) == classical_selberg(n, a, b, m)


def test_classical_beta_values():
    # n = 1 is the Euler beta integral B(a, b)
    for a in range(1, 5):
        for b in range(1, 5):
            assert classical_selberg(1, a, b, 1) == Fraction(factorial(a - 1) * factorial(b - 1),
                                                             factorial(a + b - 1))


@pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 1)])
def test_integrand_over_vandermonde_is_antisymmetric(n, m):
    assert quotient_is_antisymmetric(SelbergSpec(n, 1, 2, m))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_pair_factor_splits(m):
    assert split_factor_check(m)


@pytest.mark.parametrize("n,a,b,m", [(1, 1, 1, 1), (2, 1, 1, 1), (2, 2, 1, 1), (2, 1, 2, 2)])
def test_cube_form(n, a, b, m):
    spec = SelbergSpec(n, a, b, m)
    assert askey_direct(spec) == askey_iterated(spec) == askey_closed_form(spec)


def test_parameters_validated():
    with pytest.raises(ValueError):
        SelbergSpec(0, 1, 1, 1)
    assert SelbergSpec.from_poset_params(2, 0, 1, 1) == SelbergSpec(2, 1, 2, 1)
