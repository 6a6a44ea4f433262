import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma.errors import InputError
from phigamma.field import GF, field_of_degree, is_irreducible

from conftest import fields


@given(fields, st.data())
def test_field_axioms(F, data):
    a, b, c = (F.elem(data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == F.zero
    if a != F.zero:
        assert a * a.inverse() == F.one


@given(fields)
def test_multiplicative_group_is_cyclic(F):
    g = F.elem(F.generator())
    powers = {(g**k).code for k in range(F.q - 1)}
    assert len(powers) == F.q - 1


@given(fields, st.data())
def test_coordinates_round_trip(F, data):
    x = F.elem(data.draw(st.integers(0, F.q - 1)))
    assert F(x.coords()) == x


def test_fields_are_cached():
    assert GF(3, (1, 0, 1)) is GF(3, (1, 0, 1))
    assert field_of_degree(5, 2) is field_of_degree(5, 2)


def test_bad_fields_are_rejected():
    with pytest.raises(InputError):
        GF(4)
    with pytest.raises(InputError):
        GF(3, (2, 0, 1))  # t^2 + 2 = (t-1)(t+1) over F_3
    assert is_irreducible((1, 0, 1), 3)
