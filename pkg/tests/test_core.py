import json

import pytest
from hypothesis import given

from wgreedy.core import (
    IncompleteSignPattern,
    SparseVector,
    coefficient,
    complement,
    indicator,
    project,
    sgn,
    sign_pattern,
    signed_indicator,
)

from conftest import index_sets, vectors


def test_zeros_are_pruned_and_keys_sorted():
    x = SparseVector({5: 1.0, 2: 0.0, 3: -2.0})
    assert list(x) == [3, 5]
    assert x.support() == {3, 5}
    assert x[2] == 0.0 and x[100] == 0.0


def test_bad_indices_rejected():
    with pytest.raises(ValueError):
        SparseVector({0: 1.0})
    with pytest.raises(TypeError):
        SparseVector({1.5: 1.0})
    with pytest.raises(ValueError):
        SparseVector({1: float("nan")})


def test_huge_indices_are_exact():
    n = 2 ** 200
    x = SparseVector({n: 1.0, n + 1: 2.0})
    assert x.max_index() == n + 1
    assert SparseVector.from_json(x.to_json()) == x
    assert x.to_json_obj()["entries"][0][0] == str(n)


def test_coefficient_and_projection_examples():
    x = SparseVector({1: 3.0, 2: -2.0, 4: 1.0})
    assert coefficient(x, 2) == -2.0
    assert coefficient(x, 3) == 0.0
    assert project(x, {1, 3}) == SparseVector({1: 3.0})
    assert project(x, set()) == SparseVector()
    assert complement(x, {1, 2}) == SparseVector({4: 1.0})


def test_sgn_zero_is_plus_one():
    assert sgn(0.0) == 1
    assert sgn(-0.0) == 1
    assert sgn(-3.5) == -1 and sgn(2.0) == 1


def test_signed_indicator():
    assert signed_indicator({1, 3}, {1: 1, 3: -1}) == SparseVector({1: 1.0, 3: -1.0})
    assert indicator([]) == SparseVector()
    with pytest.raises(IncompleteSignPattern):
        signed_indicator({1, 2}, {1: 1})
    with pytest.raises(ValueError):
        signed_indicator({1}, {1: 2})


def test_sign_pattern_of_zero_coordinate():
    x = SparseVector({1: -2.0})
    assert sign_pattern(x, {1, 2}) == {1: -1, 2: 1}


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        '{"entries": 3}',
        '{"entries": [["2", 1.0], ["1", 1.0]]}',
        '{"entries": [["0", 1.0]]}',
        '{"entries": [["x", 1.0]]}',
        '{"entries": [["1", "a"]]}',
        '{"entries": [["1"]]}',
    ],
)
def test_malformed_json(text):
    with pytest.raises(ValueError):
        SparseVector.from_json(text)


@given(vectors())
def test_json_round_trip(x):
    assert SparseVector.from_json(x.to_json()) == x
    assert json.loads(x.to_json()) == x.to_json_obj()


@given(vectors(), index_sets())
def test_projection_splits_vector(x, A):
    assert project(x, A) + complement(x, A) == x
    assert project(project(x, A), A) == project(x, A)
    assert project(x, A).support() <= A


@given(vectors(), vectors())
def test_arithmetic(x, y):
    assert x + SparseVector() == x
    assert x - x == SparseVector()
    assert -(-x) == x
    assert (x + y).support() <= x.support() | y.support()
    assert hash(x * 1.0) == hash(x)
