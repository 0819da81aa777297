import math

import pytest
from hypothesis import given

from wgreedy.spaces import UnknownName, get_space, m3_space
from wgreedy.weights import (
    Comparison,
    cardinality,
    check_structured,
    constant,
    custom,
    feasible,
    geometric,
    get_weight,
    norm_induced,
    sequential,
    weight,
    weight_comparison,
)

from conftest import index_sets


def test_weight_examples():
    assert weight(cardinality(), {4, 9, 11}) == 3
    assert weight(geometric(0.5), {1, 2}) == 0.75
    assert math.isclose(weight(norm_induced(m3_space()), {3, 9, 27, 81}), 25 / 12, rel_tol=1e-15)
    assert weight(cardinality(), set()) == 0


def test_comparison_verdicts():
    card = cardinality()
    assert weight_comparison(card, {1, 2}, {2, 3}) is Comparison.EQUAL
    assert weight_comparison(card, {1}, {1, 2}) is Comparison.A_SIDE
    linear = sequential(lambda n: float(n), "seq:n")
    assert weight_comparison(linear, {5}, {1, 2}) is Comparison.B_SIDE
    assert not feasible(linear, {5}, {1, 2})
    assert feasible(linear, {1, 2}, {5})


def test_infinite_weights_compare_equal():
    inf = custom(lambda A: math.inf if A else 0.0, "inf")
    assert weight_comparison(inf, {1}, {2}) is Comparison.EQUAL
    assert weight_comparison(inf, set(), {2}) is Comparison.A_SIDE


def test_catalog_names():
    assert get_weight("card").name == "card"
    assert get_weight("seq:geom:0.5").w_n(3) == 0.125
    assert get_weight("seq:const:2").w_n(7) == 2
    assert get_weight("norm:l2")({1, 2, 3, 4}) == 2
    with pytest.raises(UnknownName):
        get_weight("banana")


def test_weight_from_list_file(tmp_path):
    p = tmp_path / "w.json"
    p.write_text("[1, 0.5, 0.25]")
    W = get_weight(f"seq:list:{p}")
    assert weight(W, {1, 3}) == 1.25


def test_structured_cardinality():
    rep = check_structured(cardinality(), 1000)
    assert rep.passes
    assert all(eps == 1.0 for _, eps in rep.f_witnesses)


def test_structured_geometric_fails_e():
    rep = check_structured(geometric(0.5), 64)
    assert not rep.passes
    assert rep.conditions["e"]["verdict"] == "violated on samples"


def test_structured_m3_norm_weight():
    rep = check_structured(norm_induced(m3_space()), 128)
    assert rep.passes
    assert rep.to_json_obj()["passes"]


@given(index_sets(), index_sets())
def test_feasibility_is_a_total_preorder(A, B):
    W = norm_induced(get_space("l2"))
    assert feasible(W, A, B) or feasible(W, B, A)
    assert feasible(W, A, A)
    assert weight_comparison(constant(1.0), A, B) == weight_comparison(cardinality(), A, B)
