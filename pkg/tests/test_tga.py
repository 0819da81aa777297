import math

import pytest
from hypothesis import given, settings

from wgreedy.core import SparseVector, complement
from wgreedy.spaces import get_space, summing_space
from wgreedy.tga import (
    GreedySelection,
    NotGreedyError,
    chebyshev_sum,
    greedy_sets,
    greedy_sum,
    is_greedy_set,
    partial_sum,
    truncate,
)

from conftest import vectors


def sets(sels):
    return [sel.indices for sel in sels]


def test_greedy_set_examples():
    assert sets(greedy_sets(SparseVector({1: 3, 2: 1, 3: 2}), 2)) == [{1, 3}]
    assert sets(greedy_sets(SparseVector({1: 1, 2: -1, 3: 1}), 1, "all")) == [{1}, {2}, {3}]
    assert sets(greedy_sets(SparseVector({1: 2, 2: 2, 3: 1}), 1, "one")) == [{1}]


def test_selection_thresholds():
    (sel,) = greedy_sets(SparseVector({1: 3, 2: 1, 3: 2}), 2)
    assert isinstance(sel, GreedySelection)
    assert sel.threshold_in == 2 and sel.threshold_out == 1
    assert sel.m == 2 and sel.sorted() == (1, 3)


def test_m_zero_and_padding():
    x = SparseVector({2: 1.0})
    (empty,) = greedy_sets(x, 0)
    assert empty.indices == frozenset() and math.isinf(empty.threshold_in)
    padded = sets(greedy_sets(x, 2, "all"))
    assert padded == [{1, 2}]
    with pytest.raises(ValueError):
        greedy_sets(x, -1)


def test_greedy_sum_examples():
    x = SparseVector({1: 3, 2: 1, 3: 2})
    assert greedy_sum(x, greedy_sets(x, 0)[0]) == SparseVector()
    assert greedy_sum(x, greedy_sets(x, 3)[0]) == x
    assert greedy_sum(x, frozenset({1, 3})) == SparseVector({1: 3, 3: 2})
    with pytest.raises(NotGreedyError):
        greedy_sum(x, frozenset({2}))


def test_partial_sum_examples():
    x = SparseVector({2: 5, 10: 1})
    assert partial_sum(x, 0) == SparseVector()
    assert partial_sum(x, 3) == SparseVector({2: 5})
    assert partial_sum(x, 10) == x


def test_truncation_examples():
    x = SparseVector({1: 5, 2: -3, 3: 1})
    assert truncate(x, 2) == SparseVector({1: 2, 2: -2, 3: 1})
    assert truncate(x, 5) == x
    assert truncate(SparseVector({1: 5}), 5) == SparseVector({1: 5})
    with pytest.raises(ValueError):
        truncate(x, 0)


def test_chebyshev_lattice_shortcut():
    l1 = get_space("l1")
    x = SparseVector({1: 3, 2: -2, 3: 1})
    r = chebyshev_sum(l1, x, {1, 2})
    assert r.residual_norm == 1 and r.certified_gap == 0
    assert chebyshev_sum(l1, x, x.support()).residual_norm == 0


def test_chebyshev_summing_norm_matches_grid():
    space = summing_space()
    x = SparseVector({1: 1.0, 2: 1.0})
    r = chebyshev_sum(space, x, {1})
    # brute-force grid over a_1 in [-4, 4], step 1e-4
    grid = min(space(x - SparseVector({1: -4 + k * 1e-4})) for k in range(80001))
    assert grid == pytest.approx(1.0, abs=1e-9)
    assert r.residual_norm <= 1.0 + 1e-9
    assert r.converged


@settings(max_examples=40, deadline=None)
@given(vectors(max_index=5, max_size=4))
def test_chebyshev_beats_projection_on_summing_norm(x):
    space = summing_space()
    Lam = frozenset(sorted(x.support())[:2])
    r = chebyshev_sum(space, x, Lam)
    assert r.residual_norm <= space(complement(x, Lam)) + 1e-9
    assert r.coefficients.support() <= Lam


@given(vectors(ties=True))
def test_every_enumerated_set_is_greedy(x):
    for m in range(len(x) + 1):
        sels = greedy_sets(x, m, "all")
        assert sels[0].indices == greedy_sets(x, m, "one")[0].indices
        for sel in sels:
            assert len(sel.indices) == m
            assert is_greedy_set(x, sel.indices)


@given(vectors())
def test_truncation_is_coordinatewise_clip(x):
    alpha = 1.5
    t = truncate(x, alpha)
    for n, c in x.items():
        assert t[n] == (c if abs(c) <= alpha else math.copysign(alpha, c))
