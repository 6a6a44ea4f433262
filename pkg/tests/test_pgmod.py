from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma.errors import NonPrimitiveH, NotIrreducible, ResidualSingular
from phigamma.field import field_of_degree
from phigamma.linalg import SMat
from phigamma.pgmod import (
    classify_rank1,
    compute_dnat,
    det_module,
    direct_sum,
    disguise,
    hermite_form,
    induced_from_params,
    lattice_psi_image,
    module_slope,
    rank1_from_character,
    recover_weil_params,
    reduced,
    regularize_frobenius,
    slope_zero_reduction,
    standard_lattice,
    test_isomorphic,
    validate_module,
)
from phigamma.series import PadicUnit, SeriesRing
from phigamma.weil import SmoothCharacter, WeilParams, canonicalize, predicted_determinant

F9 = field_of_degree(3, 2)


def characters(F):
    codes = st.integers(1, F.q - 1)
    return st.builds(lambda c, k: SmoothCharacter.from_omega_power(F.elem(c), k), codes, st.integers(0, F.p - 2))


@pytest.mark.parametrize("p,n,h", [(2, 2, 1), (3, 2, 1), (3, 1, 1), (5, 2, 7), (2, 3, 1)])
def test_induced_modules_satisfy_the_relations(p, n, h):
    F = field_of_degree(p, 2)
    D = induced_from_params(n, h, F(1), 20)
    rep = validate_module(D)
    assert rep.valid and rep.invertible
    assert validate_module(disguise(D, 3)).valid


def test_broken_module_is_reported():
    D = induced_from_params(2, 1, F9(2), 20)
    a, G = D.gamma[0]
    bad = type(D)(D.ring, D.mat_phi, [(a, G.shift(1))])
    rep = validate_module(bad)
    assert not rep.valid
    assert rep.first["relation"].startswith("G_a")


def test_non_primitive_h_is_rejected():
    with pytest.raises(NonPrimitiveH):
        induced_from_params(2, 4, F9(1), 20)


@given(characters(F9), st.integers(0, 1000))
def test_rank1_classification_survives_disguise(delta, seed):
    assert classify_rank1(disguise(rank1_from_character(delta, 30), seed)) == delta


@given(characters(F9), characters(F9))
def test_determinant_of_a_direct_sum(d1, d2):
    D = direct_sum(rank1_from_character(d1, 30), rank1_from_character(d2, 30))
    got = classify_rank1(det_module(D))
    assert got.at_p == d1.at_p * d2.at_p
    assert got.omega_exponent() == (d1.omega_exponent() + d2.omega_exponent()) % 2


def test_gamma_matrix_is_a_cocycle():
    D = disguise(induced_from_params(2, 1, F9(2), 30), 1)
    M = D.padic_prec
    a, b = PadicUnit(7, M, 3), PadicUnit(11, M, 3)
    lhs = D.gamma_matrix(a * b)
    rhs = D.gamma_matrix(a) @ D.gamma_matrix(b).gamma(a)
    assert (lhs - rhs).is_zero()
    # and it commutes with Frobenius
    Ga = D.gamma_matrix(a)
    assert (Ga @ D.mat_phi.gamma(a) - D.mat_phi @ Ga.phi()).is_zero()


def test_hermite_form_is_canonical():
    R = SeriesRing(F9, 1)
    X = R.gen(30)
    one = R.one(30)
    A = SMat(R, [[X, one], [R.zero(30), X * X]])
    U = SMat(R, [[one + X, one], [X, one.scale(F9(2))]])  # invertible over E[[X]]
    B = A @ U
    assert hermite_form(A) == hermite_form(B)


def test_dnat_of_rank1_is_standard():
    D = rank1_from_character(SmoothCharacter.from_omega_power(F9(2), 1), 30)
    L, it = compute_dnat(D)
    assert it == 1 and L == standard_lattice(D.ring, 1)


def test_dnat_is_psi_stable_and_independent_of_start():
    D = disguise(induced_from_params(2, 1, F9(2), 40), 0)
    std = standard_lattice(D.ring, 2)
    L, _ = compute_dnat(D)
    assert lattice_psi_image(D, L) == L
    assert compute_dnat(D, std.scaled(-2))[0] == L


def test_regularize_scalar_worked_case():
    R = SeriesRing(field_of_degree(3, 1), 1)
    P = SMat(R, [[R.from_ints([2, 2], 0, 40)]])
    M, P0 = regularize_frobenius(P)
    want = R.one(40)
    for k in (1, 3, 9, 27):
        want = want * R.from_ints([1] + [0] * (k - 1) + [1], 0, 40)
    assert (M[0, 0] - want).is_zero()
    assert int(P0[0, 0]) == R.field.from_int(2)


def test_regularize_needs_invertible_constant_term():
    R = SeriesRing(F9, 1)
    P = SMat(R, [[R.from_ints([0, 1], 0, 20)]])
    with pytest.raises(ResidualSingular):
        regularize_frobenius(P)


@pytest.mark.parametrize("p,n,h", [(3, 2, 1), (2, 3, 1), (5, 2, 1)])
def test_slope_zero_certificate_replays(p, n, h):
    F = field_of_degree(p, 2)
    D = reduced(disguise(induced_from_params(n, h, F(1), 40), 2))
    cert = slope_zero_reduction(D)
    assert cert.replay(D)
    assert cert.slope == module_slope(D)


def test_isomorphism_test_separates_parameters():
    D1 = disguise(induced_from_params(2, 1, F9(2), 40), 0)
    D2 = disguise(induced_from_params(2, 1, F9(2), 40), 1)
    D3 = induced_from_params(2, 1, F9(1), 40)
    D4 = induced_from_params(2, 5, F9(2), 40)
    assert test_isomorphic(D1, D2)
    assert not test_isomorphic(D1, D3)
    assert not test_isomorphic(D1, D4)


@pytest.mark.parametrize("p,n,h", [(2, 2, 1), (3, 2, 7), (3, 3, 5), (5, 2, 3)])
def test_recover_weil_params(p, n, h):
    F = field_of_degree(p, 2)
    Lam = F.elem(F.q - 1)
    w = recover_weil_params(disguise(induced_from_params(n, h, Lam, 40), 5))
    assert w == canonicalize(WeilParams(n, h, Lam))
    assert predicted_determinant(w) == classify_rank1(det_module(induced_from_params(n, h, Lam, 40)))


def test_reducible_module_is_not_recovered():
    triv = rank1_from_character(SmoothCharacter.trivial(F9), 40)
    other = rank1_from_character(SmoothCharacter.from_omega_power(F9(2), 0), 40)
    D = direct_sum(triv, other.change_basis(SMat(other.ring, [[other.ring.gen(60)]])))
    with pytest.raises(NotIrreducible):
        recover_weil_params(D)
