import math

import pytest

from wgreedy.constants import (
    UnboundedWitness,
    certify,
    estimate_conservative_variants,
    estimate_disjoint_superdemocracy,
    estimate_greedy_type_constants,
    estimate_K_s,
    estimate_property_A,
    ratio,
    replay,
)
from wgreedy.core import SparseVector
from wgreedy.experiments import estimate_all
from wgreedy.families import m3_indices, property_A_tuples, random_vectors, vector_m_pairs
from wgreedy.spaces import get_space, m3_space, summing_space
from wgreedy.theorems import harmonic, root_sum
from wgreedy.weights import cardinality, geometric, norm_induced

M3 = m3_space()
M3W = norm_induced(M3)


def powers(N, base, start=1):
    return frozenset(base ** k for k in range(start, start + N))


def test_ratio_conventions():
    assert ratio(0.0, 0.0) == 1.0
    assert ratio(3.0, 2.0) == 1.5
    with pytest.raises(UnboundedWitness):
        ratio(1.0, 0.0, "K_s")


def test_certified_tables():
    c = certify(get_space("l1"), cardinality())
    assert all(c[k] == 1.0 for k in ("K_s", "C_b_omega", "C_g_omega", "C_s_omega", "C_p_omega", "C_sd_disjoint"))
    c = certify(get_space("linf"), geometric(0.5))
    assert c["C_b_omega"] == 1.0 and c["C_g_omega"] == 1.0
    c = certify(M3, M3W)
    assert c["C_d_disjoint"] == 1.0 and c["C_b_omega"] == 2.0 and c["C_g_omega"] == 2.0
    c = certify(M3, cardinality())
    assert c["C_b_omega"] is None and c["C_g_omega"] is None and c["K_s"] == 1.0
    c = certify(summing_space(), cardinality())
    assert c["K_b"] == 1.0 and c["K_s"] is None and c["C_s_omega"] is None


def test_l1_estimates_are_one():
    ests = estimate_all(get_space("l1"), cardinality(), 6, seed=0, family_size=60)
    for e in ests:
        assert e.certified_value == 1.0
        assert e.lower_bound <= 1.0 + 1e-12
    assert {e.name for e in ests} >= {"K_s", "C_b_omega", "C_g_omega", "C_p_omega"}


def test_m3_disjoint_democracy_ratio():
    # direct-summation oracle: (sum n^-1/2) / H_N over N = 16
    P, Q = powers(16, 2), powers(16, 3)
    est = estimate_disjoint_superdemocracy(M3, cardinality(), [(P, Q), (Q, P)], signed=False)
    assert abs(est.lower_bound - root_sum(16) / harmonic(16)) <= 1e-12
    assert est.lower_bound == pytest.approx(1.9711708988162775, abs=1e-12)
    assert est.certified_value is None
    assert replay(est, M3, cardinality()) == est.lower_bound


def test_m3_conservative_ratio_is_rearrangement_invariant():
    P, Q = powers(16, 2), powers(16, 3, start=17)
    est = estimate_conservative_variants(M3, cardinality(), [(P, Q)])
    assert est.lower_bound == pytest.approx(root_sum(16) / harmonic(16), abs=1e-12)


def test_m3_property_A_exceeds_one_but_not_certified_bound():
    fam = property_A_tuples(M3W, m3_indices(10), 3000, 0)
    est = estimate_property_A(M3, M3W, fam, seed=0)
    assert est.lower_bound > 1.3
    assert est.lower_bound <= est.certified_value == 2.0
    assert replay(est, M3, M3W) == est.lower_bound


def test_summing_projection_ratio_grows():
    alt = [(SparseVector({n: (-1) ** n for n in range(1, d + 1)}), frozenset(range(1, d + 1, 2))) for d in range(2, 9)]
    est = estimate_K_s(summing_space(), alt)
    assert est.lower_bound > 1.0
    assert est.certified_value is None
    assert replay(est, summing_space()) == est.lower_bound


@pytest.mark.parametrize("which", ["g", "al", "s", "p"])
def test_greedy_constants_l1(which):
    fam = list(vector_m_pairs(random_vectors(5, 15, 3)))
    est = estimate_greedy_type_constants(get_space("l1"), cardinality(), fam, which)
    assert est.lower_bound <= 1.0 + 1e-12
    assert est.to_json_obj()["certified"] == 1.0


def test_m3_greedy_constant_bounded():
    fam = list(vector_m_pairs(random_vectors(m3_indices(6), 15, 3)))
    est = estimate_greedy_type_constants(M3, M3W, fam, "g")
    assert 1.0 <= est.lower_bound <= 2.0
    assert math.isfinite(replay(est, M3, M3W))
