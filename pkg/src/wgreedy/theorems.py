"""Pointwise verification suites for the weighted greedy characterizations.

Each ``check_*`` function evaluates the target inequality on an explicit
family and, where the argument goes through intermediate vectors, replays
every link of the chain so a failure names the first broken step.
Constants come only from :func:`wgreedy.constants.certify`; a suite whose
constants cannot be certified raises :class:`MissingConstant` instead of
passing.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations

from .constants import certify, ratio
from .core import SparseVector, complement, indicator, project, sgn, signed_indicator
from .families import all_signs, property_A_tuples, set_pairs
from .oracles import sigma_bar_omega, sigma_omega, sigma_tilde_omega
from .parallel import pmap
from .spaces import NormSpace, m3_space
from .tga import chebyshev_sum, greedy_sets, is_greedy_set, truncate, truncate_scalar
from .weights import SetWeight, check_structured, feasible, geometric, norm_induced, weight

__all__ = [
    "MissingConstant",
    "SuiteReport",
    "check_lemma_l1",
    "check_theorem_m1",
    "check_theorem_m2_m5",
    "check_corollary_cc",
    "check_counterexample_m3",
    "check_prop_p42",
    "check_semi_greedy_equivalence",
    "check_partially_greedy",
    "check_prop_p50",
    "check_truncation_bound",
    "check_sign_estimate",
    "democracy_ratio_direct",
    "harmonic",
    "root_sum",
]


class MissingConstant(LookupError):
    """A certified constant needed by a suite is not available."""


@dataclass
class SuiteReport:
    theorem: str
    instances: int = 0
    violations: list = field(default_factory=list)
    constants_used: dict = field(default_factory=dict)
    seed: int | None = None
    status: str = "pass"
    notes: list = field(default_factory=list)
    negative_controls: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    links_checked: int = 0

    def finalize(self) -> "SuiteReport":
        self.violations.sort(key=lambda v: (v["instance"], v["link"]))
        if self.status != "skipped":
            fired = all(nc["fired"] for nc in self.negative_controls)
            self.status = "pass" if not self.violations and fired else "fail"
        return self

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "skipped")

    def to_json_obj(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "instances": self.instances,
            "links_checked": self.links_checked,
            "violations": self.violations,
            "negative_controls": self.negative_controls,
            "constants_used": self.constants_used,
            "seed": self.seed,
            "notes": self.notes,
            "tables": self.tables,
        }


class _Links:
    """Collects link checks for one instance."""

    def __init__(self, instance, tol):
        self.instance = instance
        self.tol = tol
        self.violations = []
        self.count = 0

    def le(self, link, lhs, rhs, **detail):
        self.count += 1
        if not lhs <= rhs + self.tol:
            self.violations.append(
                {"instance": self.instance, "link": link, "lhs": lhs, "rhs": rhs, **detail}
            )
            return False
        return True

    def same(self, link, u, v, rel=0.0):
        """Vector identity, exact unless ``rel`` > 0."""
        self.count += 1
        if rel == 0.0:
            ok = u == v
        else:
            idx = set(u) | set(v)
            ok = all(abs(u[n] - v[n]) <= rel * max(1.0, abs(u[n]), abs(v[n])) for n in idx)
        if not ok:
            self.violations.append(
                {"instance": self.instance, "link": link, "lhs": u.to_json_obj(), "rhs": v.to_json_obj()}
            )
        return ok

    def holds(self, link, cond, **detail):
        self.count += 1
        if not cond:
            self.violations.append({"instance": self.instance, "link": link, **detail})
        return cond


def _need(consts: dict, *names):
    missing = [n for n in names if consts.get(n) is None]
    if missing:
        raise MissingConstant(f"no certified value for {', '.join(missing)}")
    return [consts[n] for n in names]


def _collect(rep: SuiteReport, results):
    for links in results:
        rep.instances += 1
        rep.links_checked += links.count
        rep.violations.extend(links.violations)


def _sup_signs(ev, A):
    """``sup_delta ||1_{delta A}||`` by enumerating sign patterns."""
    if not A:
        return 0.0
    return max(ev(signed_indicator(A, d)) for d in all_signs(A))


def _greedy_items(vectors, max_m=None):
    items = []
    for i, x in enumerate(vectors):
        top = len(x) if max_m is None else min(len(x), max_m)
        for m in range(top + 1):
            for sel in greedy_sets(x, m, "all"):
                items.append((f"v{i:04d}/m{m}/{'-'.join(map(str, sel.sorted()))}", x, sel.indices))
    return items


def _subsets(U):
    U = sorted(U)
    for r in range(len(U) + 1):
        for c in combinations(U, r):
            yield frozenset(c)


# -- reformulation of Property (A) ----------------------------------------

def _pa_instance(ev, C, inst, x, A, B, eps, delta, tol):
    L = _Links(inst, tol)
    lhs = ev(x + signed_indicator(A, eps))
    rhs = ev(x + signed_indicator(B, delta))
    L.le("property_A", lhs, C * rhs)

    # Property (A) => reformulated form, for x' = x + (coefficients on A)
    k = len(A)
    u = SparseVector({n: eps[n] * (j + 1) / (k + 1) for j, n in enumerate(sorted(A))})
    xp = x + u
    base = complement(xp, A)
    top = max((ev(base + signed_indicator(A, d)) for d in all_signs(A)), default=ev(base))
    tail = ev(base + signed_indicator(B, delta))
    L.le("convex_hull", ev(xp), top)
    L.le("property_A_on_residual", top, C * tail)
    L.le("reformulated", ev(xp), C * tail)

    # reformulated form => Property (A) through y = x + 1_{eps A}
    y = x + signed_indicator(A, eps)
    L.same("y_identity", complement(y, A) + signed_indicator(B, delta), x + signed_indicator(B, delta))
    L.le("reformulated_at_y", ev(y), C * ev(complement(y, A) + signed_indicator(B, delta)))
    return L


def check_lemma_l1(
    space: NormSpace,
    W: SetWeight,
    family,
    tol: float = 1e-9,
    negative_family=None,
    seed=None,
    workers: int = 1,
    halved_control: bool = False,
) -> SuiteReport:
    """Property (A) and its reformulation ``||x|| <= C ||x - P_A x + 1_{eB}||``,
    both directions, on tuples ``(x, A, B, eps, delta)``."""
    consts = certify(space, W)
    (C,) = _need(consts, "C_b_omega")
    rep = SuiteReport("lemma-l1", seed=seed, constants_used={"C_b_omega": C})
    ev = space.evaluate
    items = list(family)
    _collect(rep, pmap(lambda it: _pa_instance(ev, C, f"t{it[0]:05d}", *it[1], tol), enumerate(items), workers))
    if halved_control:
        # a constant below the true one must be caught somewhere on the family
        fired = sum(
            1
            for x, A, B, eps, delta in items
            if ev(x + signed_indicator(A, eps)) > 0.5 * C * ev(x + signed_indicator(B, delta)) + tol
        )
        rep.negative_controls.append(
            {"name": "halved constant", "cases": len(items), "violations": fired, "fired": fired > 0}
        )
    if negative_family is not None:
        fired = 0
        for x, A, B, eps, delta in negative_family:
            if ev(x + signed_indicator(A, eps)) > C * ev(x + signed_indicator(B, delta)) + tol:
                fired += 1
        rep.negative_controls.append(
            {"name": "reversed weight constraint", "cases": len(negative_family), "violations": fired, "fired": fired > 0}
        )
    return rep.finalize()


def m3_unbalanced_family(N_list=(8, 16, 32, 64)):
    """Powers of 2 against powers of 3: ``w(A) >= w(B)`` under the m3-induced weight."""
    out = []
    for N in N_list:
        A = frozenset(2 ** k for k in range(1, N + 1))
        B = frozenset(3 ** k for k in range(1, N + 1))
        out.append((SparseVector(), A, B, {n: 1 for n in A}, {n: 1 for n in B}))
    return out


# -- greedy <=> unconditional + Property (A) ------------------------------

def _greedy_chain(space, W, K_s, C_b, inst, x, A, tol):
    """All competitors B with w(B\\A) <= w(A\\B), Chebyshev coefficients on B."""
    ev = space.evaluate
    L = _Links(inst, tol)
    lhs = ev(complement(x, A))
    U = sorted(x.support() | A)
    alpha = min((abs(x[n]) for n in A), default=0.0)
    best = math.inf
    for B in _subsets(U):
        if not feasible(W, B, A):
            continue
        b = chebyshev_sum(space, x, B).coefficients
        rhs = ev(x - b)
        best = min(best, rhs)
        L.le("end", lhs, K_s * C_b * rhs, B=sorted(B))
        if not A:
            continue
        AmB, BmA = A - B, B - A
        shifted = SparseVector({n: alpha * sgn(x[n]) for n in AmB})
        rest = complement(x, A | B)
        mid1 = ev(complement(complement(x, A), BmA) + shifted)
        L.le("reformulated_property_A", lhs, C_b * mid1, B=sorted(B))
        L.same("rest_identity", complement(complement(x, A), BmA), rest)
        dom = rest + SparseVector({n: x[n] - b[n] for n in B}) + project(x, AmB)
        L.le("sign_domination", mid1, K_s * ev(dom), B=sorted(B))
        L.same("competitor_identity", dom, x - b)
    oracle = sigma_omega(space, W, x, A).value
    L.le("oracle_min", oracle, best)
    L.le("greedy_vs_oracle", lhs, K_s * C_b * oracle)
    return L, lhs, oracle


def _ratio_instance(ev, space, W, y, B):
    num = ev(complement(y, B))
    den = sigma_omega(space, W, y, B).value
    return ratio(num, den, "greedy ratio")


def check_theorem_m1(
    space: NormSpace,
    W: SetWeight,
    vectors,
    tol: float = 1e-9,
    pa_family=None,
    seed=None,
    workers: int = 1,
) -> SuiteReport:
    """Greedy inequality from unconditionality and Property (A), with the
    argument replayed per competitor; plus the two constructions that
    recover unconditionality and Property (A) from greediness."""
    consts = certify(space, W)
    K_s, C_b = _need(consts, "K_s", "C_b_omega")
    rep = SuiteReport("m1", seed=seed)
    ev = space.evaluate
    items = _greedy_items(vectors)
    out = pmap(lambda it: _greedy_chain(space, W, K_s, C_b, it[0], it[1], it[2], tol), items, workers)
    _collect(rep, [o[0] for o in out])
    measured = [ratio(lhs, orc, "C_g_omega") for _, lhs, orc in out]

    # direction (1a): suppression from greediness
    cons = []
    for i, x in enumerate(vectors):
        S = sorted(x.support())
        for B in (frozenset(S[: len(S) // 2]), frozenset(S[1::2])):
            if not B:
                continue
            alpha = 2.0 * x.sup_norm() + 1.0
            y = SparseVector({n: alpha + x[n] for n in B}) + complement(x, B)
            cons.append(("suppression", f"c{i:04d}/{'-'.join(map(str, sorted(B)))}", x, B, y, alpha))
    # direction (1b): Property (A) from greediness
    if pa_family is None:
        idx = sorted({n for x in vectors for n in x.support()}) or list(range(1, 7))
        pa_family = property_A_tuples(W, idx, 40, seed or 0)
    for j, (x, A, B, eps, delta) in enumerate(pa_family):
        if not B:
            continue
        y = x + signed_indicator(A, eps) + signed_indicator(B, delta)
        cons.append(("property_A", f"p{j:04d}", (x, A, eps, delta), B, y, None))

    cons_ratios = pmap(lambda c: _ratio_instance(ev, space, W, c[4], c[3]), cons, workers)
    C_meas = max(measured + cons_ratios, default=1.0)
    links = []
    for kind, inst, payload, B, y, alpha in cons:
        L = _Links(inst, tol)
        L.holds("greedy_premise", is_greedy_set(y, B))
        sig = sigma_omega(space, W, y, B).value
        L.le("ratio_bound", ev(complement(y, B)), C_meas * sig)
        if kind == "suppression":
            x = payload
            L.same("suppressed_identity", complement(y, B), complement(x, B))
            shifted = y - alpha * indicator(B)
            L.le("feasible_competitor", sig, ev(shifted))
            L.le("shift_identity", abs(ev(shifted) - ev(x)), 0.0)
            L.le("suppression", ev(complement(x, B)), C_meas * ev(x))
        else:
            x, A, eps, delta = payload
            L.holds("weight_premise", feasible(W, A, B))
            L.same("greedy_residual_identity", complement(y, B), x + signed_indicator(A, eps))
            L.le("feasible_competitor", sig, ev(complement(y, A)))
            L.same("competitor_identity", complement(y, A), x + signed_indicator(B, delta))
            L.le("property_A", ev(x + signed_indicator(A, eps)), C_meas * ev(x + signed_indicator(B, delta)))
        links.append(L)
    _collect(rep, links)
    rep.constants_used = {
        "K_s": K_s,
        "C_b_omega": C_b,
        "K_s*C_b_omega": K_s * C_b,
        "measured_greedy_ratio": C_meas,
        "alpha_rule": "2*||x||_inf + 1",
    }
    return rep.finalize()


# -- almost greedy <=> quasi-greedy + Property (A) -------------------------

def _almost_greedy_chain(space, W, C_l, C_b, inst, x, A, tol):
    ev = space.evaluate
    L = _Links(inst, tol)
    lhs = ev(complement(x, A))
    U = sorted(x.support() | A)
    alpha = min((abs(x[n]) for n in A), default=0.0)
    for B in _subsets(U):
        if not feasible(W, B, A):
            continue
        rhs = ev(complement(x, B))
        L.le("end", lhs, C_l * C_b * rhs, B=sorted(B))
        if not A or alpha == 0.0:
            continue
        AmB, BmA = A - B, B - A
        shifted = SparseVector({n: alpha * sgn(x[n]) for n in AmB})
        rest = complement(x, A | B)
        mid1 = ev(complement(complement(x, A), BmA) + shifted)
        L.le("reformulated_property_A", lhs, C_b * mid1, B=sorted(B))
        L.same("rest_identity", complement(complement(x, A), BmA), rest)
        v = rest + project(x, AmB)
        L.same("truncation_identity", rest + shifted, truncate(v, alpha))
        L.le("truncation_bound", ev(truncate(v, alpha)), C_l * ev(v))
        L.same("projection_identity", v, complement(x, B))
    L.le("greedy_vs_oracle", lhs, C_l * C_b * sigma_tilde_omega(space, W, x, A).value)
    L.le("quasi_greedy", lhs, C_l * C_b * ev(x))
    return L


def _democracy_chain(ev, consts, inst, x, A, B, eps, delta, tol):
    K_s, K_u, C_d = consts["K_s"], consts["K_u"], consts["C_d_disjoint"]
    L = _Links(inst, tol)
    a = ev(x + signed_indicator(A, eps))
    nx = ev(x)
    L.le("triangle", a, nx + ev(signed_indicator(A, eps)))
    L.le("unsign", ev(signed_indicator(A, eps)), K_u * ev(indicator(A)))
    L.le("disjoint_democracy", ev(indicator(A)), C_d * ev(indicator(B)))
    d = ev(x + signed_indicator(B, delta))
    L.le("suppress_B", nx, K_s * d)
    L.le("dominate_B", ev(indicator(B)), K_u * d)
    L.le("end", a, (K_s + K_u * K_u * C_d) * d)
    return L


def check_theorem_m2_m5(
    space: NormSpace,
    W: SetWeight,
    vectors,
    tol: float = 1e-9,
    pa_family=None,
    seed=None,
    workers: int = 1,
) -> SuiteReport:
    """Almost-greedy inequality from quasi-greediness and Property (A), with
    the truncation argument replayed per projection competitor; and the
    chain from disjoint democracy plus unconditionality to Property (A)."""
    consts = certify(space, W)
    C_l, C_b = _need(consts, "C_l", "C_b_omega")
    rep = SuiteReport("m2-m5", seed=seed, constants_used={"C_l": C_l, "C_b_omega": C_b, "C_l*C_b_omega": C_l * C_b})
    items = _greedy_items(vectors)
    _collect(rep, pmap(lambda it: _almost_greedy_chain(space, W, C_l, C_b, it[0], it[1], it[2], tol), items, workers))
    if None not in (consts["K_s"], consts["K_u"], consts["C_d_disjoint"]):
        if pa_family is None:
            idx = sorted({n for x in vectors for n in x.support()}) or list(range(1, 7))
            pa_family = property_A_tuples(W, idx, 40, seed or 0)
        ev = space.evaluate
        _collect(rep, [_democracy_chain(ev, consts, f"d{j:04d}", *t, tol) for j, t in enumerate(pa_family)])
        rep.constants_used["K_s+K_u^2*C_d"] = consts["K_s"] + consts["K_u"] ** 2 * consts["C_d_disjoint"]
    else:
        rep.notes.append("democracy chain skipped: K_s, K_u or C_d not certified")
    return rep.finalize()


def check_corollary_cc(
    space: NormSpace,
    vectors,
    tol: float = 1e-9,
    pair_indices=None,
    max_size: int = 3,
    seed=None,
    workers: int = 1,
) -> SuiteReport:
    """An unconditional basis is greedy for the weight ``w(A) = ||1_A||``."""
    if space.known_K_s is None:
        raise MissingConstant("space is not certified unconditional")
    W = norm_induced(space)
    rep = SuiteReport("cc", seed=seed)
    ev = space.evaluate
    if pair_indices is None:
        pair_indices = sorted({n for x in vectors for n in x.support()})[:7]
    L = _Links("democracy", 0.0)
    for A, B in set_pairs(pair_indices, max_size):
        if weight(W, A) <= weight(W, B):
            L.le("disjoint_democracy", ev(indicator(A)), ev(indicator(B)), A=sorted(A), B=sorted(B))
    _collect(rep, [L])
    inner = check_theorem_m1(space, W, vectors, tol, seed=seed, workers=workers)
    rep.instances += inner.instances
    rep.links_checked += inner.links_checked
    rep.violations.extend(inner.violations)
    rep.constants_used = {"weight": W.name, **inner.constants_used}
    return rep.finalize()


# -- the counterexample space ---------------------------------------------

def root_sum(N: int, start: int = 1) -> float:
    return math.fsum(1.0 / math.sqrt(n) for n in range(start, N + 1))


def harmonic(N: int, start: int = 1) -> float:
    return math.fsum(1.0 / n for n in range(start, N + 1))


def democracy_ratio_direct(N: int) -> float:
    """``(sum_{n<=N} n^{-1/2}) / (sum_{n<=N} 1/n)`` by direct summation."""
    return root_sum(N) / harmonic(N)


def check_counterexample_m3(
    N_list=(4, 16, 64, 100),
    seed: int = 0,
    samples: int = 100,
    length: int = 32,
    tol: float = 1e-12,
) -> SuiteReport:
    """Non-democracy growth of powers of 2 against powers of 3, and the
    harmonic lower bound for arbitrary increasing index sequences."""
    N_list = list(N_list)
    if N_list != sorted(set(N_list)):
        raise ValueError("N_list must be strictly increasing")
    ev = m3_space().evaluate
    rep = SuiteReport("m3-counterexample", seed=seed)
    rows = []
    L = _Links("growth", tol)
    prev = -math.inf
    for N in N_list:
        n2 = ev(indicator(2 ** k for k in range(1, N + 1)))
        n3 = ev(indicator(3 ** k for k in range(1, N + 1)))
        r = n2 / n3
        direct = democracy_ratio_direct(N)
        rows.append({"N": N, "norm_pow2": n2, "norm_pow3": n3, "ratio": r, "direct": direct})
        L.le(f"agreement_N{N}", abs(r - direct), 0.0)
        L.holds(f"strict_growth_N{N}", r > prev, ratio=r, previous=prev)
        prev = r
    _collect(rep, [L])
    rep.tables["ratio"] = rows

    rng = random.Random(seed)
    H = harmonic(length)
    lb = _Links("harmonic", 1e-9)
    worst = math.inf
    for s in range(samples):
        idx = set()
        while len(idx) < length:
            if rng.random() < 0.5:
                idx.add(2 ** rng.randint(1, 80))
            else:
                idx.add(rng.randint(1, 10 ** 12))
        v = ev(indicator(idx))
        worst = min(worst, v)
        lb.le("harmonic_lower_bound", H, v, sample=s)
    _collect(rep, [lb])
    rep.tables["harmonic"] = {"length": length, "H": H, "min_norm": worst, "samples": samples}
    rep.notes.append(
        "the dichotomy statements quantified over all weight sequences are not "
        "machine-checkable; only their witnesses (non-democracy, non-conservativeness, "
        "harmonic lower bound) are evaluated"
    )
    return rep.finalize()


# -- semi-greedy -----------------------------------------------------------

def _range_stats(W, R):
    ws = [W.w_n(n) for n in range(1, R + 1)]
    total = math.fsum(ws)
    upper = ws[R // 2:]
    return {
        "limsup": max(upper),
        "summable": math.fsum(upper) <= 1e-9 * total,
        "unbounded": max(ws) >= 1e9 * ws[0],
        "inf_zero": min(ws) <= 1e-9 * ws[0],
        "w": ws,
    }


def check_prop_p42(
    space: NormSpace,
    W: SetWeight,
    family=None,
    tol: float = 1e-9,
    index_bound: int = 64,
    set_range: int = 8,
    max_size: int = 3,
    seed=None,
) -> SuiteReport:
    """Bounds on ``||1_{eB}||`` forced by semi-greediness (range-relative).

    (1) ``w(B) <= limsup w_n`` gives ``sup ||1_{eB}|| <= 2 K_b C_s c_2``, with
    the two-point construction replayed; (2) a summable (or unbounded)
    weight forces uniformly bounded ``||1_{eB}||``; (3) a vanishing infimum
    does so on an extracted subsequence.
    """
    consts = certify(space, W)
    rep = SuiteReport("p42", seed=seed)
    ev = space.evaluate
    R = index_bound
    st = _range_stats(W, R)
    growth = [[k, ev(indicator(range(1, k + 1)))] for k in (1, 2, 4, 8, 16)]
    rep.tables["range"] = {
        "index_bound": R,
        "limsup_w": st["limsup"],
        "summable": st["summable"],
        "unbounded": st["unbounded"],
        "inf_zero": st["inf_zero"],
        "norm_of_prefix_indicators": growth,
    }
    rep.notes.append("limsup, summability and infimum are judged on the truncated index range")
    if consts["C_s_omega"] is None or consts["K_b"] is None:
        rep.status = "skipped"
        rep.notes.append("premise not met: no certified semi-greedy constant for this space and weight")
        return rep.finalize()
    K_b, C_s, c2 = consts["K_b"], consts["C_s_omega"], space.c2
    rep.constants_used = {"K_b": K_b, "C_s_omega": C_s, "c2": c2, "2*K_b*C_s*c2": 2 * K_b * C_s * c2}
    bound1 = 2 * K_b * C_s * c2
    struct = check_structured(W, R, seed=seed or 0)
    f_wit = [N for N, _ in struct.f_witnesses]

    if family is None:
        family = _small_sets(range(1, set_range + 1), max_size)
    links = []
    for A_idx, B in enumerate(family):
        B = frozenset(B)
        if weight(W, B) > st["limsup"]:
            continue
        L = _Links(f"b{A_idx:04d}", tol)
        L.le("part1_bound", _sup_signs(ev, B), bound1, B=sorted(B))
        N1 = next((N for N in f_wit if N > max(B)), None)
        N2 = None
        if N1 is not None:
            N2 = next((n for n in range(N1 + 1, R + 1) if weight(W, (N1, n)) > weight(W, B)), None)
        if N2 is None:
            L.holds("construction_available", True)
            links.append(L)
            continue
        Lam = frozenset((N1, N2))
        for eps in all_signs(B):
            x = signed_indicator(B, eps) + indicator(Lam)
            L.holds("greedy_premise", is_greedy_set(x, Lam))
            r = x - chebyshev_sum(space, x, Lam).coefficients
            L.le("partial_sum", ev(signed_indicator(B, eps)), K_b * ev(r))
            sig = sigma_omega(space, W, x, Lam).value
            L.le("semi_greedy", ev(r), C_s * sig)
            L.holds("competitor_feasible", feasible(W, B, Lam))
            L.le("competitor", sig, ev(indicator(Lam)))
            L.le("two_point", ev(indicator(Lam)), 2 * c2)
        links.append(L)
    _collect(rep, links)

    def bounded_family(indices, tag):
        # N with w(E) < w_1 for every E above N, then sup ||1_{eB}|| <= N c2 + (K_b+1) C_s c2
        first = indices[0]
        w1 = W.w_n(first)
        pos = next(
            (i for i in range(len(indices)) if weight(W, indices[i + 1:]) < w1),
            len(indices) - 1,
        )
        N = pos + 1
        bound = N * c2 + (K_b + 1) * C_s * c2
        L = _Links(tag, tol)
        probe = indices[: max(set_range, N + 4)]
        for B in _small_sets(probe, max_size):
            L.le("bounded", _sup_signs(ev, B), bound, B=sorted(B))
            B2 = frozenset(n for n in B if n in set(indices[N:]))
            if not B2 or first in B2:
                continue
            for eps in all_signs(B2):
                x = SparseVector.basis(first) + signed_indicator(B2, eps)
                r = x - chebyshev_sum(space, x, (first,)).coefficients
                L.le("tail_partial_sum", ev(signed_indicator(B2, eps)), (K_b + 1) * ev(r))
                sig = sigma_omega(space, W, x, (first,)).value
                L.le("semi_greedy", ev(r), C_s * sig)
                L.holds("tail_feasible", feasible(W, B2, (first,)))
                L.le("competitor", sig, ev(SparseVector.basis(first)))
        return L, N, bound

    if st["summable"] or st["unbounded"]:
        L, N, bound = bounded_family(list(range(1, R + 1)), "part2")
        _collect(rep, [L])
        rep.tables["part2"] = {"N": N, "bound": bound}
    else:
        rep.notes.append("part (2) not applicable on this range")
    if st["inf_zero"]:
        w1 = W.w_n(1)
        sub, k = [], 0
        for n in range(1, R + 1):
            if st["w"][n - 1] <= w1 * 2.0 ** -k:
                sub.append(n)
                k += 1
        L, N, bound = bounded_family(sub, "part3")
        _collect(rep, [L])
        rep.tables["part3"] = {"subsequence": sub[:16], "N": N, "bound": bound}
    else:
        rep.notes.append("part (3) not applicable on this range")
    return rep.finalize()


def _small_sets(indices, max_size):
    indices = sorted(indices)
    for r in range(1, max_size + 1):
        for c in combinations(indices, r):
            yield frozenset(c)


def _semi_greedy_instance(space, W, C_l, C_sd, inst, x, Lam, tol):
    ev = space.evaluate
    L = _Links(inst, tol)
    K = C_l * (1 + 4 * C_sd * C_l)
    orc = sigma_omega(space, W, x, Lam)
    cg = chebyshev_sum(space, x, Lam)
    sigma = orc.value
    L.le("end", cg.residual_norm, K * (sigma + tol))
    alpha = max((abs(c) for n, c in x.items() if n not in Lam), default=0.0)
    if alpha == 0.0:
        L.holds("alpha_zero_support", x.support() <= Lam)
        L.le("alpha_zero_residual", cg.residual_norm, 0.0)
        return L, "alpha_zero"
    A = orc.witness_set
    y = orc.coefficients if orc.coefficients is not None else project(x, A)
    d = x - y
    nxy = ev(d)
    Tb = SparseVector({n: truncate_scalar(c, alpha) for n, c in d.items()})
    z = SparseVector({n: truncate_scalar(d[n], alpha) for n in Lam}) + complement(x, Lam)
    AmL, LmA = A - Lam, Lam - A
    extra = SparseVector({n: x[n] - truncate_scalar(d[n], alpha) for n in AmL})
    L.same("z_identity", z, Tb + extra, rel=1e-12)
    L.holds("w_support", (x - z).support() <= Lam)
    L.le("truncation", ev(Tb), C_l * nxy)
    for n in AmL:
        L.le("clip_2alpha", abs(x[n] - truncate_scalar(d[n], alpha)), 2 * alpha, n=n)
    if AmL:
        L.holds("weight_premise", feasible(W, A, Lam))
        L.holds("complement_nonempty", bool(LmA))
        if LmA:
            eta = {n: sgn(c) for n, c in d.items()}
            for n in Lam:
                eta.setdefault(n, 1)
            mu = min(abs(d[n]) for n in LmA)
            sup_am = _sup_signs(ev, AmL)
            one_eta = ev(signed_indicator(LmA, eta))
            L.le("convexity", ev(extra), 2 * alpha * sup_am)
            L.le("alpha_le_mu", alpha, mu)
            L.le("disjoint_superdemocracy", alpha * sup_am, C_sd * mu * one_eta)
            Bset = frozenset(n for n, c in d.items() if abs(c) >= mu)
            L.holds("greedy_set_of_residual", LmA <= Bset and is_greedy_set(d, Bset))
            eB = {n: eta.get(n, 1) for n in Bset}
            L.le("quasi_greedy_indicator", one_eta, C_l * ev(signed_indicator(Bset, eB)))
            L.le("sign_estimate", mu * ev(signed_indicator(Bset, eB)), 2 * C_l * nxy)
        L.le("extra_bound", ev(extra), 4 * C_sd * C_l * C_l * nxy)
    L.le("z_bound", ev(z), K * nxy)
    L.le("chebyshev_optimal", cg.residual_norm, ev(z))
    return L, "alpha_positive"


def check_semi_greedy_equivalence(
    space: NormSpace,
    W: SetWeight,
    vectors,
    tol: float = 1e-9,
    index_bound: int = 64,
    seed=None,
    workers: int = 1,
) -> SuiteReport:
    """Chebyshev greedy residual against the weighted best error, with the
    truncated-vector construction replayed link by link."""
    struct = check_structured(W, index_bound, seed=seed or 0)
    rep = SuiteReport("m8", seed=seed)
    rep.tables["structured"] = {k: v["verdict"] for k, v in struct.conditions.items()}
    if not struct.passes:
        rep.status = "skipped"
        rep.notes.append("premise not met: weight is not structured on the tested range")
        return rep.finalize()
    consts = certify(space, W)
    C_l, C_sd = _need(consts, "C_l", "C_sd_disjoint")
    K = C_l * (1 + 4 * C_sd * C_l)
    rep.constants_used = {"C_l": C_l, "C_sd_disjoint": C_sd, "C_l*(1+4*C_sd*C_l)": K}
    items = _greedy_items(vectors)
    out = pmap(lambda it: _semi_greedy_instance(space, W, C_l, C_sd, it[0], it[1], it[2], tol), items, workers)
    _collect(rep, [o[0] for o in out])
    branches = [o[1] for o in out]
    rep.tables["branches"] = {b: branches.count(b) for b in sorted(set(branches))}
    return rep.finalize()


# -- partially greedy -------------------------------------------------------

def check_partially_greedy(
    space: NormSpace,
    W: SetWeight,
    vectors,
    tol: float = 1e-9,
    N_list=(4, 8, 16, 32),
    seed=None,
    workers: int = 1,
) -> SuiteReport:
    """Greedy residual against the best weight-feasible partial sum, the
    non-conservative ratio table of the m3 space, and the degenerate
    constraint for the weight ``2^-n``."""
    consts = certify(space, W)
    C_l, C_pl = _need(consts, "C_l", "C_pslc")
    rep = SuiteReport("m9", seed=seed, constants_used={"C_l": C_l, "C_pslc": C_pl, "C_l*C_pslc": C_l * C_pl})
    ev = space.evaluate

    def inst(it):
        tag, x, Lam = it
        L = _Links(tag, tol)
        sbar = sigma_bar_omega(space, W, x, Lam).value
        L.le("partially_greedy", ev(complement(x, Lam)), C_l * C_pl * sbar)
        return L

    _collect(rep, pmap(inst, _greedy_items(vectors), workers))

    m3 = m3_space().evaluate
    rows = []
    T = _Links("conservative_table", 1e-12)
    prev = -math.inf
    for N in N_list:
        A = range(1, N + 1)
        nA = m3(indicator(2 ** k for k in A))
        nB = m3(indicator(3 ** k for k in range(N + 1, 2 * N + 1)))
        r = nA / nB
        direct = democracy_ratio_direct(N)
        rows.append({"N": N, "norm_A": nA, "norm_B": nB, "ratio": r, "direct": direct})
        T.le(f"agreement_N{N}", abs(r - direct), 0.0)
        T.holds(f"strict_growth_N{N}", r > prev)
        prev = r
    rep.tables["non_conservative"] = rows

    g = geometric(0.5)
    D = _Links("geometric_weight", 0.0)
    admissible = 0
    for A, B in set_pairs(range(1, 13), 3):
        if max(A) < min(B) and weight(g, A) <= weight(g, B):
            admissible += 1
    D.holds("left_pairs_vacuous", admissible == 0, admissible=admissible)
    ks = [k for k in range(0, 13) if feasible(g, range(1, k + 1), {1})]
    D.holds("partial_sum_feasibility_A1", ks == [0, 1], feasible_k=ks)
    rep.tables["geometric_weight"] = {"admissible_left_pairs": admissible, "feasible_k_for_A={1}": ks}
    _collect(rep, [T, D])
    return rep.finalize()


# -- superdemocracy with and without disjointness --------------------------

def check_prop_p50(
    space: NormSpace,
    W: SetWeight,
    family=None,
    tol: float = 1e-9,
    indices=None,
    max_size: int = 3,
    index_bound: int = 64,
    seed=None,
) -> SuiteReport:
    """Overlapping pairs obey ``||1_eA|| <= C_sd^2 (c2/c1 K_b + 1) ||1_dB||``;
    the padding-set construction is replayed where the weight allows it."""
    struct = check_structured(W, index_bound, seed=seed or 0)
    rep = SuiteReport("p50", seed=seed)
    if not struct.passes:
        rep.status = "skipped"
        rep.notes.append("premise not met: weight is not structured on the tested range")
        return rep.finalize()
    consts = certify(space, W)
    C_sd, K_b = _need(consts, "C_sd_disjoint", "K_b")
    c1, c2 = space.c1, space.c2
    factor = c2 / c1 * K_b + 1
    bound = C_sd * C_sd * factor
    rep.constants_used = {"C_sd_disjoint": C_sd, "K_b": K_b, "c1": c1, "c2": c2, "bound": bound}
    ev = space.evaluate
    if family is None:
        indices = sorted(indices) if indices is not None else list(range(1, 7))
        family = set_pairs(indices, max_size, disjoint=False)
    limsup = _range_stats(W, index_bound)["limsup"]
    links = []
    for j, (A, B) in enumerate(family):
        A, B = frozenset(A), frozenset(B)
        if not (A & B) or weight(W, A) > weight(W, B):
            # disjoint pairs belong to the disjoint constant; infeasible pairs are out of scope
            continue
        L = _Links(f"o{j:05d}", tol)
        a = _sup_signs(ev, A)
        b = min(ev(signed_indicator(B, d)) for d in all_signs(B))
        L.le("superdemocracy", a, bound * b, A=sorted(A), B=sorted(B))
        if weight(W, A) > limsup:
            E, N = _padding_sets(W, max(A | B) + 1, weight(W, A))
            if E is not None:
                F = E | {N}
                L.holds("padding_premise", weight(W, E) <= weight(W, A) < weight(W, F))
                L.le("to_padding", a, C_sd * ev(indicator(F)))
                L.le("padding_step", ev(indicator(F)), factor * ev(indicator(E)))
                L.le("from_padding", ev(indicator(E)), C_sd * b)
        links.append(L)
    _collect(rep, links)
    return rep.finalize()


def _padding_sets(W, start, target, limit=10_000):
    """``E = {start, ..., start+k}`` maximal with ``w(E) <= target``, and the next index."""
    if W.w_n(start) > target:
        return None, None
    end = start
    while end - start < limit and weight(W, range(start, end + 2)) <= target:
        end += 1
    return frozenset(range(start, end + 1)), end + 1


# -- truncation and the sign estimate --------------------------------------

def check_truncation_bound(space: NormSpace, pairs, tol: float = 1e-9) -> SuiteReport:
    """``||T_alpha x|| <= C_l ||x||`` on ``(x, alpha)`` pairs."""
    (C_l,) = _need(certify(space), "C_l")
    rep = SuiteReport("bto", constants_used={"C_l": C_l})
    ev = space.evaluate
    links = []
    for i, (x, alpha) in enumerate(pairs):
        L = _Links(f"t{i:05d}", tol)
        L.le("truncation", ev(truncate(x, alpha)), C_l * ev(x))
        links.append(L)
    _collect(rep, links)
    return rep.finalize()


def check_sign_estimate(space: NormSpace, pairs, tol: float = 1e-9) -> SuiteReport:
    """``min_{A} |x_n| * ||1_{eps A}|| <= 2 C_l ||x||`` for greedy sets ``A``."""
    (C_l,) = _need(certify(space), "C_l")
    rep = SuiteReport("sign-estimate", constants_used={"C_l": C_l})
    ev = space.evaluate
    links = []
    for i, (x, A) in enumerate(pairs):
        L = _Links(f"s{i:05d}", tol)
        L.holds("greedy_premise", is_greedy_set(x, A))
        if A:
            mu = min(abs(x[n]) for n in A)
            eps = {n: sgn(x[n]) for n in A}
            L.le("sign_estimate", mu * ev(signed_indicator(A, eps)), 2 * C_l * ev(x))
        links.append(L)
    _collect(rep, links)
    return rep.finalize()
