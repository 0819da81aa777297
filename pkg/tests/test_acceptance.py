"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines are printed even
without ``-s``) or ``python tests/test_acceptance.py``.
"""
import math
import time

import pytest

from wgreedy import theorems as th
from wgreedy.cli import main as cli_main
from wgreedy.experiments import run_suite, sign_pairs, truncation_pairs
from wgreedy.families import m3_indices, property_A_tuples, random_vectors
from wgreedy.oracles import sigma_m, sigma_omega
from wgreedy.reports import dumps
from wgreedy.spaces import get_space, m3_space
from wgreedy.tga import greedy_sets, greedy_sum
from wgreedy.weights import cardinality, check_structured, geometric, norm_induced

TOL = 1e-9
CARD = cardinality()
M3 = m3_space()
M3W = norm_induced(M3)

# direct-summation oracle values, frozen
R_N = {
    4: 1.336539384180563,
    16: 1.9711708988162775,
    64: 3.078077554611782,
    100: 3.583622699826725,
}
H_32 = 4.05849519543652


@pytest.fixture
def say(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} | {detail}")
        return ok

    return emit


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_oracle_values_frozen():
    for N, v in R_N.items():
        assert abs(th.root_sum(N) / th.harmonic(N) - v) <= 1e-15
    assert abs(th.harmonic(32) - H_32) <= 1e-15


def test_criterion_01_counterexample_ratio(say):
    rep, dt = timed(lambda: th.check_counterexample_m3([4, 16, 64, 100], samples=1))
    rows = rep.tables["ratio"]
    agree = all(abs(r["ratio"] - R_N[r["N"]]) <= 1e-12 and abs(r["ratio"] - r["direct"]) <= 1e-12 for r in rows)
    growth = all(a["ratio"] < b["ratio"] for a, b in zip(rows, rows[1:]))
    ok = agree and growth and dt < 1.0
    vals = ", ".join(f"r({r['N']})={r['ratio']:.4f}" for r in rows)
    assert say(1, ok, f"{vals}; agree<=1e-12={agree}; strictly increasing={growth}; {dt:.3f}s")


def test_criterion_02_harmonic_lower_bound(say):
    rep, dt = timed(lambda: th.check_counterexample_m3([4], seed=0, samples=100, length=32))
    h = rep.tables["harmonic"]
    ok = rep.status == "pass" and h["min_norm"] >= H_32 - TOL and h["samples"] == 100 and dt < 1.0
    assert say(2, ok, f"min norm over 100 subsequences {h['min_norm']:.4f} >= H_32 {H_32:.4f}; {dt:.3f}s")


def _criterion_3():
    l1 = get_space("l1")
    vecs = random_vectors(6, 200, 0)
    worst_gap = -math.inf
    worst_eq = 0.0
    count = 0
    for x in vecs:
        sig_k = [sigma_m(l1, x, k).value for k in range(len(x) + 1)]
        for m in range(len(x) + 1):
            for sel in greedy_sets(x, m, "all"):
                count += 1
                s = sigma_omega(l1, CARD, x, sel.indices).value
                worst_gap = max(worst_gap, l1(x - greedy_sum(x, sel)) - s)
                worst_eq = max(worst_eq, abs(s - min(sig_k[: m + 1])))
    return count, worst_gap, worst_eq


def test_criterion_03_one_greedy_l1(say):
    (count, gap, eq), dt = timed(_criterion_3)
    ok = gap <= TOL and eq <= 1e-12 and dt < 30
    assert say(3, ok, f"{count} greedy sets; max(resid - sigma)={gap:.2e}; max|sigma - min sigma_k|={eq:.2e}; {dt:.2f}s")


def test_criterion_04_truncation_bound(say):
    def run():
        reps = {}
        for name in ("l1", "l2", "linf", "m3"):
            space = get_space(name)
            reps[name] = th.check_truncation_bound(space, truncation_pairs(space, 500, 0), TOL)
        return reps

    reps, dt = timed(run)
    ok = all(r.status == "pass" and r.instances == 500 and r.constants_used["C_l"] == 1 for r in reps.values())
    ok = ok and dt < 5
    assert say(4, ok, f"4 spaces x 500 pairs, violations={sum(len(r.violations) for r in reps.values())}; {dt:.2f}s")


def test_criterion_05_sign_estimate(say):
    def run():
        reps = {}
        for name in ("l1", "l2", "linf", "m3"):
            space = get_space(name)
            reps[name] = th.check_sign_estimate(space, sign_pairs(space, 200, 0), TOL)
        return reps

    reps, dt = timed(run)
    ok = all(r.status == "pass" and r.instances == 200 for r in reps.values()) and dt < 5
    assert say(5, ok, f"4 spaces x 200 pairs, violations={sum(len(r.violations) for r in reps.values())}; {dt:.2f}s")


def test_criterion_06_property_A_reformulation(say):
    def run():
        l1 = th.check_lemma_l1(
            get_space("l1"), CARD, property_A_tuples(CARD, range(1, 9), 500, 0), TOL,
            negative_family=property_A_tuples(CARD, range(1, 9), 100, 1, reverse=True),
        )
        m3 = th.check_lemma_l1(
            M3, M3W, property_A_tuples(M3W, m3_indices(10), 500, 0), TOL,
            negative_family=th.m3_unbalanced_family(),
        )
        return l1, m3

    (l1, m3), dt = timed(run)
    fired = m3.negative_controls[0]["violations"]
    ok = l1.status == m3.status == "pass" and l1.instances == m3.instances == 500 and fired >= 1 and dt < 30
    detail = (
        f"l1/card {len(l1.violations)} violations, m3/norm {len(m3.violations)} violations "
        f"(C={m3.constants_used['C_b_omega']}); unbalanced m3 control fired {fired}x; {dt:.2f}s"
    )
    assert say(6, ok, detail)


def test_criterion_07_greedy_and_almost_greedy(say):
    def run():
        out = []
        for name in ("l1", "l2", "linf"):
            vecs = random_vectors(6, 25, 7)
            space = get_space(name)
            out.append(th.check_theorem_m1(space, CARD, vecs, TOL))
            out.append(th.check_theorem_m2_m5(space, CARD, vecs, TOL))
        return out

    reps, dt = timed(run)
    consts = [r.constants_used.get("K_s*C_b_omega", r.constants_used.get("C_l*C_b_omega")) for r in reps]
    ok = all(r.status == "pass" for r in reps) and all(c == 1.0 for c in consts) and dt < 60
    n = sum(r.instances for r in reps)
    assert say(7, ok, f"{n} instances over l1, l2, linf; constants {sorted(set(consts))}; violations={sum(len(r.violations) for r in reps)}; {dt:.2f}s")


def test_criterion_08_semi_greedy_chain(say):
    vecs = random_vectors(6, 40, 8)
    rep, dt = timed(lambda: th.check_semi_greedy_equivalence(get_space("l1"), CARD, vecs, TOL))
    K = rep.constants_used["C_l*(1+4*C_sd*C_l)"]
    ok = rep.status == "pass" and K == 5.0 and dt < 60
    assert say(8, ok, f"constant {K}; {rep.links_checked} links over {rep.instances} instances; branches {rep.tables['branches']}; {dt:.2f}s")


def test_criterion_09_partially_greedy(say):
    vecs = random_vectors(6, 40, 9)
    rep, dt = timed(lambda: th.check_partially_greedy(get_space("l1"), CARD, vecs, TOL, N_list=(16,)))
    inequality = rep.status == "pass" and rep.constants_used["C_l*C_pslc"] == 1.0
    ratio = rep.tables["non_conservative"][0]["ratio"]
    target = 9.93
    ratio_ok = abs(ratio - target) <= 1e-2
    ok = inequality and ratio_ok and dt < 30
    detail = (
        f"inequality with constant 1: {'pass' if inequality else 'fail'}; "
        f"non-conservative ratio at N=16 is {ratio:.4f}, expected {target} +/- 1e-2; {dt:.2f}s"
    )
    assert say(9, ok, detail)


def test_criterion_10_structured_weights(say):
    def run():
        return (
            check_structured(CARD, 1000),
            check_structured(geometric(0.5), 64),
            check_structured(M3W, 256),
        )

    (card, geo, m3), dt = timed(run)
    card_ok = card.passes and all(eps == 1.0 for _, eps in card.f_witnesses)
    geo_ok = geo.conditions["e"]["verdict"] == "violated on samples"
    ok = card_ok and geo_ok and m3.passes and dt < 5
    assert say(10, ok, f"card passes with margin 1: {card_ok}; 2^-n fails (e): {geo_ok}; m3 norm weight passes: {m3.passes}; {dt:.2f}s")


def test_criterion_11_determinism(say, tmp_path):
    def run():
        same = True
        for suite, space, W in (("m1", M3, M3W), ("m8", get_space("l2"), CARD), ("lemma-l1", M3, M3W), ("p42", get_space("linf"), geometric(0.5))):
            for seed in (0, 5):
                a = dumps(run_suite(suite, space, W, seed=seed, family_size=60, workers=1).to_json_obj())
                b = dumps(run_suite(suite, space, W, seed=seed, family_size=60, workers=4).to_json_obj())
                c = dumps(run_suite(suite, space, W, seed=seed, family_size=60, workers=1).to_json_obj())
                same = same and a == b == c
        args = ["check", "--suite", "all", "--space", "l1", "--weight", "card", "--family-size", "40"]
        cli_main([*args, "--out", str(tmp_path / "w1")])
        cli_main([*args, "--out", str(tmp_path / "w4"), "--workers", "4"])
        files = (tmp_path / "w1" / "check_all.json").read_bytes() == (tmp_path / "w4" / "check_all.json").read_bytes()
        return same, files

    (same, files), dt = timed(run)
    assert say(11, same and files, f"suite JSON identical across reruns and worker counts: {same}; CLI output byte-identical: {files}; {dt:.2f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
