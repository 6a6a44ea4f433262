from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma import colmez
from phigamma.errors import EmptyOverlap, InputError, InsufficientDepth, NotUpperTriangular
from phigamma.linalg import SMat
from phigamma.suites import borel_setup

P = 3
SETUP = {}


def setup(p=P):
    if p not in SETUP:
        SETUP[p] = borel_setup(p, 60)
    return SETUP[p]


def tower(seed, p=P, top=6):
    D, chi = setup(p)
    rng = np.random.default_rng(seed)
    R = D.ring
    entry = SMat(R, [[R.random(rng, 0, 60, unit=False)] for _ in range(D.d)])
    return colmez.tower_seed(D, entry, top, chi)


fractions = st.builds(
    lambda a, k: Fraction(a, P**k), st.integers(-30, 30), st.integers(0, 2)
)


def same(a, b):
    v = colmez.tower_equal(a, b)
    return v.equal and v.prec > 0


def test_borel_elements():
    g = colmez.BorelElem(2, Fraction(1, 3), 9, 3)
    assert (g @ g.inverse()) == colmez.BorelElem.identity(3)
    z, beta, k, u = g.decompose()
    rebuilt = (
        colmez.BorelElem.central(z, 3)
        @ colmez.BorelElem.unipotent(beta, 3)
        @ colmez.BorelElem.lower_diag(Fraction(3) ** k, 3)
        @ colmez.BorelElem.lower_diag(u, 3)
    )
    assert rebuilt == g
    with pytest.raises(NotUpperTriangular):
        colmez.BorelElem.from_rows([[1, 0], [1, 1]], 3)


def test_parse_word():
    w = colmez.parse_word("u(1/p);d(p);a(2);z(3)", 3)
    assert [g.rows() for g in w][0] == ((1, Fraction(1, 3)), (0, 1))
    assert colmez.word_product(w, 3) == colmez.BorelElem(3, 6, 18, 3)
    with pytest.raises(InputError):
        colmez.parse_word("u(__import__)", 3)


@given(fractions, fractions, st.integers(0, 10**6))
def test_unipotent_additivity(z1, z2, seed):
    y = tower(seed)
    assert same(colmez.act_unipotent(z1, colmez.act_unipotent(z2, y)), colmez.act_unipotent(z1 + z2, y))


@given(fractions, st.integers(0, 10**6))
def test_j_independence(z, seed):
    y = tower(seed)
    v = -colmez._val(z, P) if z else 0
    i = 5
    j = max(0, v - i)
    a = colmez.unipotent_entry(y, z, i, j)
    b = colmez.unipotent_entry(y, z, i, j + 1)
    prec = min(a.prec, b.prec)
    assert prec > 0 and (a.truncate(prec) - b.truncate(prec)).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_word_action_matches_product(p):
    y = tower(1, p)
    word = colmez.parse_word("u(1/p);d(p);a(3);z(p);u(3)" if p == 2 else "u(1/p);d(p);a(2);z(p);u(3)", p)
    assert same(colmez.act_word(word, y), colmez.borel_act(colmez.word_product(word, p), y))


def test_central_character():
    D, chi = setup()
    y = tower(2)
    acted = colmez.act_central(Fraction(6), y)
    assert (acted.entry - y.entry.scale(chi(6).inverse())).is_zero()


def test_depth_is_enforced():
    y = tower(3, top=1)
    with pytest.raises(InsufficientDepth) as info:
        colmez.act_unipotent(Fraction(1, 27), y)
    assert info.value.required_headroom == 2
    with pytest.raises(InsufficientDepth):
        y.at(2)


def test_raised_tower_is_consistent():
    y = tower(4)
    up = y.raised(1)
    assert up.top == y.top + 1
    assert same(up, y)


def test_empty_overlap():
    y = tower(5)
    low = y.lowered(6)
    deep = colmez.tower_seed(low.module, low.entry.truncate(0), 0, low.chi)
    with pytest.raises(EmptyOverlap):
        colmez.tower_equal(deep, low)
