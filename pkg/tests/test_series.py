from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma.errors import DivisionByZero, InsufficientPadicPrecision, NotOneUnit
from phigamma.field import field_of_degree
from phigamma.series import (
    PadicUnit,
    SeriesRing,
    ZpExponent,
    exponent_recover,
    one_unit_pow,
    padic_digits_needed,
)

from conftest import PRIMES, fields, series


def ring_for(p, m=1):
    return SeriesRing(field_of_degree(p, m), 1)


@pytest.mark.parametrize("p", PRIMES)
def test_psi_of_monomials(p):
    R = ring_for(p)
    for r in range(p):
        for m in range(-6, 7):
            y = R.monomial(1, p * m + r, p * m + r + 10 * p).psi()
            assert y.val == m
            assert y == R.monomial((-1) ** r, m, y.prec)


@given(st.data())
def test_ring_laws(data):
    R = SeriesRing(data.draw(fields), 1)
    a, b, c = (data.draw(series(R)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * a.inverse()) == R.one(10)


@given(st.data())
def test_phi_is_a_ring_map_and_psi_inverts_it(data):
    R = SeriesRing(data.draw(fields), 1)
    a, b = data.draw(series(R)), data.draw(series(R))
    assert (a * b).phi() == a.phi() * b.phi()
    assert a.phi().psi() == a
    assert (a * b.phi()).psi() == a.psi() * b


@given(st.data())
def test_gamma_is_multiplicative_and_commutes_with_phi(data):
    R = SeriesRing(data.draw(fields), 1)
    p = R.p
    M = padic_digits_needed(p, 400)
    units = st.integers(1, p**M - 1).filter(lambda u: u % p)
    a = PadicUnit(data.draw(units), M, p)
    b = PadicUnit(data.draw(units), M, p)
    y = data.draw(series(R))
    assert y.gamma(b).gamma(a) == y.gamma(a * b)
    assert y.phi().gamma(a) == y.gamma(a).phi()
    assert (y * y).gamma(a) == y.gamma(a) * y.gamma(a)


def test_precision_bookkeeping():
    R = ring_for(3)
    x = R.from_ints([1, 2, 0, 1], 0, 4)
    assert x.phi().prec == 12
    assert x.phi().psi().prec == 4
    assert R.zero(7).val == 7
    with pytest.raises(DivisionByZero):
        R.zero(5).inverse()


def test_gamma_needs_padic_digits():
    R = ring_for(3)
    with pytest.raises(InsufficientPadicPrecision):
        R.from_ints([1] * 40, 0, 40).gamma(PadicUnit(2, 1, 3))


@given(st.sampled_from(PRIMES), st.integers(-50, 50), st.integers(1, 20))
def test_one_unit_power_laws(p, num, den):
    if den % p == 0:
        den += 1
    R = ring_for(p)
    u = R.from_ints([1, 1], 0, 30)
    M = padic_digits_needed(p, 30)
    t = ZpExponent(num, den, M, p)
    s = ZpExponent(1, 1, M, p)
    assert one_unit_pow(u, t) * one_unit_pow(u, s) == one_unit_pow(u, t + s)
    if num >= 0:
        assert one_unit_pow(u, t) ** den == u**num


@given(st.sampled_from(PRIMES), st.integers(0, 10**6))
def test_exponent_recover_inverts_powering(p, t):
    R = ring_for(p)
    base = R.from_ints([1, 1], 0, 40)
    u = one_unit_pow(base, t)
    got = exponent_recover(u, base)
    assert one_unit_pow(base, got) == u


def test_one_unit_checks():
    R = ring_for(5)
    with pytest.raises(NotOneUnit):
        one_unit_pow(R.from_ints([2, 1], 0, 10), 3)


def test_padic_unit_arithmetic():
    a = PadicUnit.from_rational(Fraction(2, 3), 5, 6)
    assert (a * a.inverse()).residue == 1
    assert (a**3).residue == pow(a.residue, 3, 5**6)


def test_ramified_ring():
    F = field_of_degree(3, 1)
    R = SeriesRing(F, 1)
    x = R.from_ints([1, 1], 0, 10)
    y = x.ramify(2)
    assert y.e == 2 and y.prec == 20
    assert np.array_equal(y.coeffs[::2], x.coeffs)
