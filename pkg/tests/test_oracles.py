import math

import pytest
from hypothesis import given, settings

from wgreedy.core import SparseVector
from wgreedy.oracles import (
    MAX_UNIVERSE,
    default_universe,
    sigma_bar_omega,
    sigma_m,
    sigma_omega,
    sigma_tilde_m,
    sigma_tilde_omega,
)
from wgreedy.spaces import get_space, summing_space
from wgreedy.tga import greedy_sets
from wgreedy.weights import cardinality, geometric

from conftest import vectors

L1, L2 = get_space("l1"), get_space("l2")
X = SparseVector({1: 3, 2: 2, 3: 1})


def l1_best_m_term(x, m):
    # closed form in l1: drop all but the m largest magnitudes
    mags = sorted((abs(c) for c in x.values()), reverse=True)
    return math.fsum(mags[m:])


def test_sigma_m_examples():
    assert sigma_m(L1, X, 0).value == 6
    assert sigma_m(L1, X, 1).value == 3
    assert sigma_tilde_m(L1, X, 1).value == 3
    assert sigma_tilde_m(L1, X, 1).witness_set == {1}
    assert sigma_m(L1, X, 3).value == 0
    with pytest.raises(ValueError):
        sigma_m(L1, X, 4)


def test_sigma_omega_examples():
    card = cardinality()
    assert sigma_omega(L1, card, X, set()).value == 6
    assert sigma_omega(L1, card, X, {1}).value == 3
    assert sigma_tilde_omega(L2, card, SparseVector({1: 2, 2: 1}), {1}).value == 1
    assert sigma_tilde_omega(L1, geometric(0.5), X, set()).value == 6


def test_sigma_bar_examples():
    card = cardinality()
    assert sigma_bar_omega(L1, card, X, set()).value == 6
    r = sigma_bar_omega(L1, card, X, {1, 2})
    assert r.value == 1 and r.k == 2
    assert sigma_bar_omega(L1, card, X, {1, 2, 3}).value == 0
    with pytest.raises(ValueError):
        sigma_bar_omega(L1, card, X, {1}, k_max=2)


def test_universe_rules():
    U, exact = default_universe(L1, X, (), cardinality())
    assert U == (1, 2, 3) and exact
    U, exact = default_universe(summing_space(), SparseVector({5: 1.0}), ())
    assert len(U) == 9 and not exact
    big = SparseVector({n: 1.0 for n in range(1, MAX_UNIVERSE + 2)})
    with pytest.raises(ValueError):
        sigma_m(L1, big, 1)


def test_missing_universe_indices_rejected():
    with pytest.raises(ValueError):
        sigma_m(L1, X, 1, universe=(1, 2))


def test_witness_replays():
    for r in (sigma_m(L2, X, 1), sigma_omega(L2, cardinality(), X, {2}), sigma_bar_omega(L2, cardinality(), X, {1})):
        assert r.replay(L2, X) == r.value
        assert r.to_json_obj()["value"] == r.value


@settings(max_examples=60, deadline=None)
@given(vectors(max_index=6, max_size=6, ties=True))
def test_l1_weighted_error_is_best_error_up_to_m(x):
    card = cardinality()
    for m in range(len(x) + 1):
        for sel in greedy_sets(x, m, "all"):
            s = sigma_omega(L1, card, x, sel.indices).value
            best = min(l1_best_m_term(x, k) for k in range(m + 1))
            assert abs(s - best) <= 1e-12
            assert abs(sigma_m(L1, x, m).value - l1_best_m_term(x, m)) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(vectors(max_index=7, max_size=7))
def test_worker_count_does_not_change_results(x):
    B = frozenset(sorted(x.support())[:2])
    a = sigma_omega(L2, cardinality(), x, B, workers=1)
    b = sigma_omega(L2, cardinality(), x, B, workers=3)
    assert a == b
