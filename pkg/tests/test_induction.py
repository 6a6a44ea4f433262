from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma import induction as ind
from phigamma.colmez import BorelElem
from phigamma.errors import InputError, NotInPositiveMonoid, NotPlusPart
from phigamma.field import field_of_degree
from phigamma.weil import SmoothCharacter

F9 = field_of_degree(3, 2)
SIGMA = ind.InducedData(
    SmoothCharacter.from_omega_power(F9([0, 1]), 1), SmoothCharacter.from_omega_power(F9.one, 1)
)
P = 3

units = st.sampled_from([1, 2, 4, 5, 7, 8, -1, -2]).map(Fraction)
borel = st.builds(
    lambda a, ka, b, kb, d, kd: BorelElem(a * Fraction(P) ** ka, Fraction(b, P**kb), d * Fraction(P) ** kd, P),
    units, st.integers(-3, 3), st.integers(-40, 40), st.integers(0, 3), units, st.integers(-3, 3),
)


@st.composite
def elements(draw, plus=False, max_size=5):
    coeffs = {}
    for _ in range(draw(st.integers(1, max_size))):
        delta = draw(st.integers(-2, 0) if plus else st.integers(-3, 2))
        width = P ** max(-delta, 0) if plus else P ** draw(st.integers(0, 2))
        beta = Fraction(draw(st.integers(0, width - 1)), width)
        coeffs[ind.CosetIndex(delta, beta)] = draw(st.integers(1, F9.q - 1))
    return ind.InductionElement(SIGMA, coeffs)


def test_canonical_beta():
    assert ind.canonical_beta(Fraction(-1, 3), 3) == Fraction(2, 3)
    assert ind.canonical_beta(Fraction(7, 2), 3) == 0
    assert ind.canonical_beta(Fraction(5, 18), 3) == Fraction(7, 9)  # 5/2 = 7 mod 9


def test_documented_decompositions():
    idx, kz, c = ind.coset_decompose(BorelElem(P, 0, 1, P), SIGMA)
    assert (idx.delta, idx.beta) == (-1, 0)
    assert kz == BorelElem.central(P, P)
    assert c == SIGMA.sigma1(P)
    idx, kz, c = ind.coset_decompose(BorelElem(1, Fraction(1, P), 1, P), SIGMA)
    assert (idx.delta, idx.beta) == (0, Fraction(1, P)) and kz == BorelElem.identity(P) and c == F9.one


@given(borel)
def test_coset_decomposition_replays(m):
    idx, kz, c = ind.coset_decompose(m, SIGMA)
    assert idx.matrix(P) @ kz == m
    assert ind.in_kz(kz)
    assert c == SIGMA(kz)


@given(borel, borel, elements())
def test_action_is_a_group_action(g, h, f):
    assert ind.act_induction(g @ h, f) == ind.act_induction(g, ind.act_induction(h, f))


@given(borel, elements())
def test_s_map_is_equivariant(g, f):
    assert ind.s_map(ind.act_induction(g, f)) == SIGMA(g) * ind.s_map(f)


def test_unipotent_shifts_beta_by_p_delta():
    f = ind.InductionElement.basis(SIGMA, 0, -2)
    g = ind.act_induction(ind.unipotent(P), f)
    assert g.support() == [ind.CosetIndex(-2, Fraction(1, 9))]


@given(elements())
def test_fx_relation(f):
    lhs = ind.apply_F(ind.apply_X(f))
    rhs = ind.apply_F(f)
    for _ in range(P):
        rhs = ind.apply_X(rhs)
    assert lhs == rhs


@given(elements(plus=True, max_size=12))
def test_x_image_matches_linear_algebra(y):
    res = ind.x_image_test(y)
    assert res.in_image == ind.x_image_bruteforce(y)
    assert (not ind.mod_x_projection(y)) == res.in_image
    if res.in_image:
        assert ind.apply_X(res.witness) == y


def test_x_image_examples():
    y = ind.InductionElement.basis(SIGMA, 0, -1) - ind.InductionElement.basis(SIGMA, Fraction(1, 3), -1)
    res = ind.x_image_test(y)
    assert res and ind.apply_X(res.witness) == y
    assert not ind.x_image_test(ind.InductionElement.basis(SIGMA, 0, 0))
    assert ind.x_image_test(ind.InductionElement(SIGMA, {})).witness.is_zero()
    with pytest.raises(NotPlusPart):
        ind.x_image_test(ind.InductionElement.basis(SIGMA, 0, 1))


@given(elements(plus=True, max_size=8))
def test_projection_intertwines_frobenius(y):
    lhs = ind.mod_x_projection(ind.apply_F(y))
    rhs = ind.mod_x_projection(y)
    assert lhs == ([F9.zero] + [SIGMA.sigma1(P) * c for c in rhs] if rhs else [])


def test_projection_of_basis_vectors():
    for n in range(4):
        assert ind.mod_x_projection(ind.InductionElement.basis(SIGMA, 0, -n)) == [F9.zero] * n + [F9.one]


positive = st.builds(
    lambda a, n, b, d: BorelElem(a * P**n, b, d, P), units, st.integers(0, 4), st.integers(-50, 50), units
)


@given(positive)
def test_generation_witness_replays(m):
    w = ind.af_generate_witness(m, SIGMA)
    assert ind.replay_witness(w, SIGMA) == ind.InductionElement.of_matrix(SIGMA, m)


def test_witness_rejects_non_positive():
    with pytest.raises(NotInPositiveMonoid):
        ind.af_generate_witness(BorelElem(Fraction(1, 3), 0, 1, 3), SIGMA)
    assert ind.af_generate_witness(BorelElem.identity(3), SIGMA) == ind.GenerationWitness(Fraction(0), 0, F9.one)


def test_sigma2_normalization_is_enforced():
    with pytest.raises(InputError):
        ind.InducedData(SIGMA.sigma1, SmoothCharacter.from_omega_power(F9(2), 0))


@given(elements())
def test_json_round_trip(f):
    assert ind.InductionElement.from_json(SIGMA, f.to_json()) == f
