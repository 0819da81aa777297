"""Lower-bound estimators for greedy-type constants, and certified values
where they follow in closed form from the space and weight.

Estimates are maxima of ratios over explicit families and are therefore only
LOWER bounds.  Certified values come from :func:`certify`, which derives each
constant from structural facts (lattice norm, lp additivity, weight induced
by the norm) and the characterization inequalities; a missing ingredient
propagates as ``None``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import SparseVector, complement, project, signed_indicator
from .oracles import sigma_bar_omega, sigma_omega, sigma_tilde_omega
from .parallel import pmap
from .spaces import NormSpace
from .tga import chebyshev_sum, greedy_sets, partial_sum
from .weights import SetWeight, weight

__all__ = [
    "CONSTANT_NAMES",
    "ConstantEstimate",
    "UnboundedWitness",
    "certify",
    "ratio",
    "estimate_K_s",
    "estimate_K_u",
    "estimate_K_b",
    "estimate_C_l",
    "estimate_property_A",
    "estimate_disjoint_superdemocracy",
    "estimate_conservative_variants",
    "estimate_pslc",
    "estimate_greedy_type_constants",
    "replay",
]

CONSTANT_NAMES = (
    "K_s", "K_u", "K_b", "C_l",
    "C_b_omega", "C_d_disjoint", "C_sd_disjoint",
    "C_conservative", "C_superconservative", "C_pslc",
    "C_g_omega", "C_al_omega", "C_s_omega", "C_p_omega",
)


class UnboundedWitness(ArithmeticError):
    """A ratio with zero denominator and positive numerator."""

    def __init__(self, name, witness):
        super().__init__(f"{name}: positive numerator over zero denominator at {witness}")
        self.name = name
        self.witness = witness


@dataclass
class ConstantEstimate:
    name: str
    lower_bound: float
    certified_value: float | None
    witness: dict | None
    family: str
    seed: int | None = None
    instances: int = 0

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "lower_bound": self.lower_bound,
            "certified": self.certified_value,
            "witness": self.witness,
            "family": self.family,
            "seed": self.seed,
        }


def ratio(num: float, den: float, name: str = "", witness=None) -> float:
    if den == 0.0:
        if num == 0.0:
            return 1.0
        raise UnboundedWitness(name, witness)
    return num / den


# -- certification ---------------------------------------------------------

def _cardinality_like(W: SetWeight) -> bool:
    """Weights that are an increasing function of |A|."""
    if W.kind == "cardinality":
        return True
    if W.kind == "norm_induced" and W.space.p is not None and not math.isinf(W.space.p):
        return True
    return W.name.startswith("seq:const:")


def _mul(*xs):
    if any(v is None for v in xs):
        return None
    out = 1.0
    for v in xs:
        out *= v
    return out


def certify(space: NormSpace, W: SetWeight | None = None) -> dict:
    """Certified upper values (``None`` when not derivable) for every constant."""
    c = dict.fromkeys(CONSTANT_NAMES + ("C_d", "C_sd"))
    c["K_s"] = space.known_K_s
    c["K_u"] = space.known_K_u
    c["K_b"] = space.known_K_b
    c["C_l"] = space.known_C_l
    if W is None:
        return c

    democracy = ("C_d_disjoint", "C_sd_disjoint", "C_conservative", "C_superconservative")
    if space.p is not None and (math.isinf(space.p) or _cardinality_like(W)):
        # ||x + 1_eA||_p^p = ||x||_p^p + |A|; for p = inf nonempty A forces nonempty B
        for k in democracy + ("C_b_omega", "C_pslc"):
            c[k] = 1.0
    elif (
        space.is_lattice_monotone
        and W.kind == "norm_induced"
        and W.space.name == space.name
    ):
        # w(A) <= w(B) is ||1_A|| <= ||1_B||, and lattice norms ignore signs
        for k in democracy:
            c[k] = 1.0

    K_s, K_u = c["K_s"], c["K_u"]
    if c["C_b_omega"] is None and None not in (K_s, K_u, c["C_d_disjoint"]):
        c["C_b_omega"] = K_s + K_u * K_u * c["C_d_disjoint"]
    if c["C_pslc"] is None and None not in (K_s, K_u, c["C_conservative"]):
        c["C_pslc"] = K_s + K_u * K_u * c["C_conservative"]

    C_l = c["C_l"]
    c["C_g_omega"] = _mul(K_s, c["C_b_omega"])
    c["C_al_omega"] = _mul(C_l, c["C_b_omega"])
    candidates = [c["C_g_omega"]]
    if None not in (C_l, c["C_sd_disjoint"]):
        candidates.append(C_l * (1 + 4 * c["C_sd_disjoint"] * C_l))
    candidates = [v for v in candidates if v is not None]
    c["C_s_omega"] = min(candidates) if candidates else None
    c["C_p_omega"] = _mul(C_l, c["C_pslc"])
    # without the disjointness requirement the same closed forms apply
    c["C_d"] = c["C_d_disjoint"]
    c["C_sd"] = c["C_sd_disjoint"]
    return c


# -- witness encoding ------------------------------------------------------

def _set(A):
    return [str(n) for n in sorted(A)]


def _signs(eps):
    return {str(n): s for n, s in sorted(eps.items())} if eps is not None else None


def _unset(raw):
    return frozenset(int(n) for n in raw)


def _unsigns(raw):
    return {int(n): s for n, s in raw.items()} if raw is not None else None


def _best(ratios, witnesses):
    """Max ratio; the first occurrence wins ties."""
    best_i = None
    for i, r in enumerate(ratios):
        if best_i is None or r > ratios[best_i]:
            best_i = i
    if best_i is None:
        return 0.0, None
    return ratios[best_i], witnesses(best_i)


def _estimate(name, items, fn, wit, family, certified, seed, workers):
    items = list(items)
    ratios = pmap(fn, items, workers)
    lb, w = _best(ratios, lambda i: wit(items[i]))
    return ConstantEstimate(name, lb, certified, w, family, seed, len(items))


# -- estimators ------------------------------------------------------------

def estimate_K_s(space: NormSpace, family, seed=None, workers=1, label="given") -> ConstantEstimate:
    """``max ||P_A x|| / ||x||`` over pairs ``(x, A)``."""
    ev = space.evaluate

    def fn(item):
        x, A = item
        return ratio(ev(project(x, A)), ev(x), "K_s", _wit(item))

    def _wit(item):
        x, A = item
        return {"x": x.to_json_obj(), "A": _set(A)}

    return _estimate("K_s", family, fn, _wit, label, space.known_K_s, seed, workers)


def estimate_K_u(space: NormSpace, family, seed=None, workers=1, label="given") -> ConstantEstimate:
    """``max ||sum a_n x_n e_n|| / ||x||`` over ``(x, a)`` with ``|a_n| <= 1``."""
    ev = space.evaluate

    def fn(item):
        x, a = item
        y = SparseVector({n: a.get(n, 0.0) * c for n, c in x.items()})
        return ratio(ev(y), ev(x), "K_u")

    def _wit(item):
        x, a = item
        return {"x": x.to_json_obj(), "a": {str(n): v for n, v in sorted(a.items())}}

    return _estimate("K_u", family, fn, _wit, label, space.known_K_u, seed, workers)


def estimate_K_b(space: NormSpace, vectors, seed=None, workers=1, label="given") -> ConstantEstimate:
    """``max ||S_k x|| / ||x||`` over vectors and every cut ``k``.

    ``S_k x`` only changes at support indices, so those cuts suffice.
    """
    ev = space.evaluate
    items = [(x, k) for x in vectors for k in (0, *sorted(x.support()))]

    def fn(item):
        x, k = item
        return ratio(ev(partial_sum(x, k)), ev(x), "K_b")

    def _wit(item):
        x, k = item
        return {"x": x.to_json_obj(), "k": k}

    return _estimate("K_b", items, fn, _wit, label, space.known_K_b, seed, workers)


def estimate_C_l(space: NormSpace, family, seed=None, workers=1, label="given") -> ConstantEstimate:
    """``max ||x - G_m x|| / ||x||`` over ``(x, m)`` and all greedy sets."""
    ev = space.evaluate
    items = [(x, m, sel.indices) for x, m in family for sel in greedy_sets(x, m, "all")]

    def fn(item):
        x, m, Lam = item
        return ratio(ev(complement(x, Lam)), ev(x), "C_l")

    def _wit(item):
        x, m, Lam = item
        return {"x": x.to_json_obj(), "m": m, "Lambda": _set(Lam)}

    return _estimate("C_l", items, fn, _wit, label, space.known_C_l, seed, workers)


def _pa_ratio(ev, x, A, B, eps, delta, name):
    num = ev(x + signed_indicator(A, eps))
    den = ev(x + signed_indicator(B, delta))
    return ratio(num, den, name, None)


def _pa_wit(item):
    x, A, B, eps, delta = item
    return {"x": x.to_json_obj(), "A": _set(A), "B": _set(B), "eps": _signs(eps), "delta": _signs(delta)}


def estimate_property_A(space, W, family, seed=None, workers=1, label="given") -> ConstantEstimate:
    """``max ||x + 1_eA|| / ||x + 1_dB||`` over admissible tuples.

    Tuples must have ``A, B, supp(x)`` disjoint, ``||x||_inf <= 1`` and
    ``w(A) <= w(B)``; inadmissible tuples are skipped.
    """
    ev = space.evaluate
    items = [t for t in family if _pa_admissible(W, *t)]
    fn = lambda t: _pa_ratio(ev, *t, "C_b_omega")
    cert = certify(space, W)["C_b_omega"]
    return _estimate("C_b_omega", items, fn, _pa_wit, label, cert, seed, workers)


def _pa_admissible(W, x, A, B, eps, delta):
    S = x.support()
    return (
        not (A & B or A & S or B & S)
        and x.sup_norm() <= 1.0
        and weight(W, A) <= weight(W, B)
    )


def estimate_disjoint_superdemocracy(
    space, W, family, signed=True, disjoint=True, seed=None, workers=1, label="given"
) -> ConstantEstimate:
    """``max ||1_eA|| / ||1_dB||`` over pairs with ``w(A) <= w(B)``.

    ``family`` yields ``(A, B)`` or ``(A, B, eps, delta)``.  With
    ``signed=False`` the signs are dropped (democracy); with
    ``disjoint=False`` overlapping pairs are allowed.
    """
    ev = space.evaluate
    items = []
    for t in family:
        A, B = t[0], t[1]
        eps, delta = (t[2], t[3]) if (signed and len(t) == 4) else (None, None)
        if disjoint and A & B:
            continue
        if weight(W, A) > weight(W, B):
            continue
        items.append((SparseVector(), A, B, eps, delta))
    kind = ("C_sd" if signed else "C_d") + ("_disjoint" if disjoint else "")
    cert = certify(space, W).get(kind)
    fn = lambda t: _pa_ratio(ev, *t, kind)
    return _estimate(kind, items, fn, _pa_wit, label, cert, seed, workers)


def estimate_conservative_variants(
    space, W, family, signed=False, seed=None, workers=1, label="given"
) -> ConstantEstimate:
    """As the democracy estimator, restricted to ``A < B`` (``A`` empty skipped)."""
    ev = space.evaluate
    items = []
    for t in family:
        A, B = t[0], t[1]
        if not A or not B or max(A) >= min(B):
            continue
        if weight(W, A) > weight(W, B):
            continue
        eps, delta = (t[2], t[3]) if (signed and len(t) == 4) else (None, None)
        items.append((SparseVector(), A, B, eps, delta))
    name = "C_superconservative" if signed else "C_conservative"
    cert = certify(space, W)[name]
    fn = lambda t: _pa_ratio(ev, *t, name)
    return _estimate(name, items, fn, _pa_wit, label, cert, seed, workers)


def estimate_pslc(space, W, family, seed=None, workers=1, label="given") -> ConstantEstimate:
    """Property (A) ratio restricted to ``A < supp(x) | B``."""
    ev = space.evaluate
    items = []
    for t in family:
        x, A, B = t[0], t[1], t[2]
        right = x.support() | B
        if A and right and max(A) >= min(right):
            continue
        if _pa_admissible(W, *t):
            items.append(t)
    fn = lambda t: _pa_ratio(ev, *t, "C_pslc")
    cert = certify(space, W)["C_pslc"]
    return _estimate("C_pslc", items, fn, _pa_wit, label, cert, seed, workers)


_WHICH = {"g": "C_g_omega", "al": "C_al_omega", "s": "C_s_omega", "p": "C_p_omega"}


def _greedy_instance(space, W, x, m, Lam, which):
    ev = space.evaluate
    if which == "s":
        num = chebyshev_sum(space, x, Lam).residual_norm
    else:
        num = ev(complement(x, Lam))
    if which in ("g", "s"):
        den = sigma_omega(space, W, x, Lam).value
    elif which == "al":
        den = sigma_tilde_omega(space, W, x, Lam).value
    else:
        den = sigma_bar_omega(space, W, x, Lam).value
    return num, den


def estimate_greedy_type_constants(
    space, W, family, which="g", seed=None, workers=1, label="given"
) -> ConstantEstimate:
    """``max ||x - G_m x|| / oracle(x, Lambda_m)`` over ``(x, m)`` and all greedy sets.

    ``which``: ``g`` (free coefficients), ``al`` (projections), ``s``
    (Chebyshev numerator, free coefficients), ``p`` (partial sums).
    """
    if which not in _WHICH:
        raise ValueError(f"which must be one of {sorted(_WHICH)}")
    name = _WHICH[which]
    items = []
    for x, m in family:
        for sel in greedy_sets(x, m, "all"):
            items.append((x, m, sel.indices))

    def fn(item):
        x, m, Lam = item
        num, den = _greedy_instance(space, W, x, m, Lam, which)
        return ratio(num, den, name, _gwit(item))

    def _gwit(item):
        x, m, Lam = item
        return {"x": x.to_json_obj(), "m": m, "Lambda": _set(Lam)}

    cert = certify(space, W)[name]
    return _estimate(name, items, fn, _gwit, label, cert, seed, workers)


def replay(est: ConstantEstimate, space: NormSpace, W: SetWeight | None = None) -> float:
    """Recompute the ratio recorded in ``est.witness``."""
    w = est.witness
    if w is None:
        return 0.0
    ev = space.evaluate
    x = SparseVector.from_json_obj(w["x"]) if "x" in w else SparseVector()
    if est.name == "K_s":
        return ratio(ev(project(x, _unset(w["A"]))), ev(x))
    if est.name == "K_u":
        a = {int(n): v for n, v in w["a"].items()}
        return ratio(ev(SparseVector({n: a.get(n, 0.0) * c for n, c in x.items()})), ev(x))
    if est.name == "K_b":
        return ratio(ev(partial_sum(x, w["k"])), ev(x))
    if est.name == "C_l":
        return ratio(ev(complement(x, _unset(w["Lambda"]))), ev(x))
    if "Lambda" in w:
        which = {v: k for k, v in _WHICH.items()}[est.name]
        num, den = _greedy_instance(space, W, x, w["m"], _unset(w["Lambda"]), which)
        return ratio(num, den)
    return _pa_ratio(
        ev, x, _unset(w["A"]), _unset(w["B"]), _unsigns(w["eps"]), _unsigns(w["delta"]), est.name
    )
