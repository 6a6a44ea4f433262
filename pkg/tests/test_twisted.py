from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma.errors import NoBreakpoint
from phigamma.field import field_of_degree
from phigamma.series import SeriesRing
from phigamma.twisted import (
    TwistedPoly,
    bracket,
    lower_hull,
    newton_slopes,
    right_scale,
    split_at_breakpoint,
    split_completely,
)

from conftest import PRIMES


def poly(p, vals, prec=40, m=2):
    """Twisted polynomial whose k-th coefficient is X^{vals[k]}(1 + X), or 0 for None."""
    R = SeriesRing(field_of_degree(p, m), 1)
    coeffs = [R.zero(200) if v is None else R.from_ints([1, 1], v, v + prec) for v in vals]
    return TwistedPoly(R, coeffs)


def test_bracket():
    assert bracket(0, 3) == 0
    assert bracket(2, 3) == 4
    assert bracket(-1, 2) == Fraction(-1, 2)


def test_lower_hull_drops_interior_points():
    assert lower_hull([(0, 0), (1, 5), (2, 0)]) == [(0, 0), (2, 0)]
    assert lower_hull([(0, 0), (1, -1), (3, 0)]) == [(0, 0), (1, -1), (3, 0)]


@pytest.mark.parametrize("p", PRIMES)
def test_isoclinic_slope(p):
    NP = newton_slopes(poly(p, [0, 10, -4]))
    assert NP.is_isoclinic
    assert NP.slopes[0][0] == Fraction(4) / bracket(2, p)


@given(st.sampled_from(PRIMES), st.lists(st.integers(-8, 8), min_size=2, max_size=5), st.integers(-3, 3))
def test_right_scale_shifts_single_slope(p, vals, v):
    # force a single segment: interior coefficients well above the chord
    d = len(vals) - 1
    vals = [0] + [30] * (d - 1) + [vals[-1]]
    P = poly(p, vals, prec=60)
    y = P.ring.from_ints([1, 2], v, v + 60)
    before = newton_slopes(P)
    after = newton_slopes(right_scale(P, y))
    assert before.is_isoclinic and after.is_isoclinic
    assert after.slopes[0][0] == before.slopes[0][0] - (p - 1) * v


@pytest.mark.parametrize("p", PRIMES)
def test_split_at_breakpoint_remultiplies(p):
    P = poly(p, [6, -3, 8], prec=60)
    NP = newton_slopes(P)
    assert len(NP.slopes) == 2
    P1, P2 = split_at_breakpoint(P)
    assert (P1 * P2).agrees(P)
    assert P2.degree == NP.vertices[1]
    assert newton_slopes(P1).is_isoclinic and newton_slopes(P2).is_isoclinic


def test_split_completely_yields_isoclinic_factors():
    P = poly(3, [10, 0, -2, 20, 30], prec=80)
    factors = split_completely(P)
    assert all(newton_slopes(f).is_isoclinic for f in factors)
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    assert prod.agrees(P)


def test_no_breakpoint():
    with pytest.raises(NoBreakpoint):
        split_at_breakpoint(poly(2, [0, 5, -1]))
