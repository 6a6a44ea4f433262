from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma.errors import InputError
from phigamma.field import field_of_degree
from phigamma.weil import (
    SmoothCharacter,
    WeilParams,
    all_primitive_hs,
    canonicalize,
    h_orbit,
    is_primitive,
    params_equivalent,
    predicted_determinant,
    primitive_hs,
    primitive_root,
)


def test_primitive_residues():
    # p = 3, n = 2: h is primitive unless 4 | h
    assert all_primitive_hs(2, 3) == [1, 2, 3, 5, 6, 7]
    assert primitive_hs(2, 3) == [1, 2, 5]
    assert not is_primitive(4, 2, 3)
    assert all_primitive_hs(1, 2) == [0]


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(0, 10**4))
def test_orbit_is_closed_under_p(p, n, h):
    orb = h_orbit(h, n, p)
    N = p**n - 1
    if N == 1:
        assert orb == [0]
    else:
        assert {x * p % N for x in orb} == set(orb)


def test_canonicalize_picks_orbit_minimum():
    F = field_of_degree(3, 2)
    w = WeilParams(2, 7, F(2))
    assert canonicalize(w).h == 5
    assert params_equivalent(w, WeilParams(2, 5, F(2)))
    with pytest.raises(InputError):
        WeilParams(2, 1, F.zero)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_primitive_root_mod_p_squared(p):
    g = primitive_root(p, 2)
    assert len({pow(g, k, p * p) for k in range(p * (p - 1))}) == p * (p - 1)


def test_character_evaluation():
    F = field_of_degree(5, 2)
    chi = SmoothCharacter.from_omega_power(F(3), 1)
    assert chi(5) == F(3)
    assert chi(Fraction(1, 25)) == F(3).inverse() ** 2
    assert chi(2) == F(2)
    assert chi(7) == chi(2)
    assert SmoothCharacter.from_json(chi.to_json(), F) == chi


def test_unramified_character_must_be_trivial_on_units():
    F = field_of_degree(5, 1)
    with pytest.raises(InputError):
        SmoothCharacter(F(2), 0, (F(3),))


def test_predicted_determinant():
    F = field_of_degree(3, 2)
    d = predicted_determinant(WeilParams(2, 1, F(2)))
    assert d.at_p == F(2)
    assert d.omega_exponent() == 1
