import json

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phigamma.errors import InputError
from phigamma.field import field_of_degree
from phigamma.pgmod import disguise, induced_from_params, rank1_from_character
from phigamma.serialize import (
    dumps,
    load_schema,
    module_from_json,
    module_to_json,
    series_from_json,
    series_to_json,
)
from phigamma.weil import SmoothCharacter

from conftest import series

SCHEMA = load_schema()


def validate(obj):
    jsonschema.validate(obj, SCHEMA)


@pytest.mark.parametrize("p,n,h,seed", [(2, 2, 1, 0), (3, 2, 5, 1), (5, 1, 3, None)])
def test_module_round_trip_is_byte_identical(p, n, h, seed):
    F = field_of_degree(p, 2)
    D = induced_from_params(n, h, F(1), 20)
    if seed is not None:
        D = disguise(D, seed)
    obj = module_to_json(D)
    validate(obj)
    again = module_to_json(module_from_json(json.loads(dumps(obj))))
    assert dumps(again) == dumps(obj)


@given(series())
def test_series_round_trip(x):
    assert series_from_json(series_to_json(x), x.field) == x
    assert series_from_json(series_to_json(x), x.field).prec == x.prec


def test_rank1_module_validates():
    F = field_of_degree(3, 1)
    validate(module_to_json(rank1_from_character(SmoothCharacter.trivial(F), 10)))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o.pop("mat_phi"),
        lambda o: o.__setitem__("d", 5),
        lambda o: o["field"].__setitem__("modulus", [2, 0, 1]),
        lambda o: o.__setitem__("p", "three"),
    ],
)
def test_bad_module_json(mutate):
    obj = module_to_json(induced_from_params(2, 1, field_of_degree(3, 2)(1), 10))
    mutate(obj)
    with pytest.raises(InputError):
        module_from_json(obj)
