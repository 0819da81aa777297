"""Weights on finite index sets and the structured-weight checker."""
from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import indicator
from .spaces import NormSpace, UnknownName, get_space

__all__ = [
    "SetWeight",
    "Comparison",
    "cardinality",
    "sequential",
    "geometric",
    "constant",
    "norm_induced",
    "custom",
    "weight",
    "weight_comparison",
    "feasible",
    "get_weight",
    "WEIGHT_CATALOG",
    "StructuredWeightReport",
    "check_structured",
]

INF = math.inf


@dataclass(frozen=True)
class SetWeight:
    """A weight ``w`` on finite subsets of the naturals.

    ``evaluate`` receives a frozenset and returns a value in ``[0, inf]``.
    For the sequential kind ``singleton(n)`` gives ``s_n``.
    """

    kind: str
    name: str
    evaluate: Callable[[frozenset], float] = field(compare=False, repr=False)
    singleton: Callable[[int], float] | None = field(default=None, compare=False, repr=False)
    space: NormSpace | None = None

    def __call__(self, A: Iterable[int]) -> float:
        return weight(self, A)

    def w_n(self, n: int) -> float:
        if self.singleton is not None:
            return self.singleton(n)
        return self.evaluate(frozenset((n,)))


def _as_set(A) -> frozenset:
    return A if isinstance(A, frozenset) else frozenset(A)


def weight(W: SetWeight, A: Iterable[int]) -> float:
    A = _as_set(A)
    if not A:
        return 0.0
    return W.evaluate(A)


def cardinality() -> SetWeight:
    return SetWeight("cardinality", "card", lambda A: float(len(A)))


def sequential(s: Callable[[int], float], name: str = "seq") -> SetWeight:
    """``w(A) = sum_{n in A} s_n`` for a positive sequence ``s``."""

    def ev(A):
        return math.fsum(s(n) for n in A)

    return SetWeight("sequential", name, ev, singleton=s)


def geometric(r: float) -> SetWeight:
    """Sequential weight ``s_n = r**n``."""
    r = float(r)
    if not r > 0:
        raise ValueError("geometric ratio must be positive")
    return sequential(lambda n: r ** n, name=f"seq:geom:{r:g}")


def constant(c: float) -> SetWeight:
    c = float(c)
    if not c > 0:
        raise ValueError("constant weight must be positive")
    return sequential(lambda n: c, name=f"seq:const:{c:g}")


def from_list(values, name="seq:list") -> SetWeight:
    values = [float(v) for v in values]
    if not values or any(not v > 0 for v in values):
        raise ValueError("weight list must be nonempty and positive")

    def s(n):
        if n > len(values):
            raise IndexError(f"weight list has {len(values)} entries, index {n} requested")
        return values[n - 1]

    return sequential(s, name=name)


def norm_induced(space: NormSpace) -> SetWeight:
    """``w(A) = ||1_A||`` for finite ``A``."""
    return SetWeight(
        "norm_induced",
        f"norm:{space.name}",
        lambda A: space.evaluate(indicator(A)),
        space=space,
    )


def custom(fn: Callable[[frozenset], float], name: str = "custom") -> SetWeight:
    return SetWeight("custom", name, fn)


WEIGHT_CATALOG = ("card", "seq:geom:<r>", "seq:const:<c>", "seq:list:<file>", "norm:<space>")


def get_weight(name: str) -> SetWeight:
    if name == "card":
        return cardinality()
    if name.startswith("norm:"):
        return norm_induced(get_space(name[5:]))
    try:
        if name.startswith("seq:geom:"):
            return geometric(float(name[9:]))
        if name.startswith("seq:const:"):
            return constant(float(name[10:]))
    except ValueError as exc:
        raise UnknownName(f"bad weight {name!r}: {exc}") from None
    if name.startswith("seq:list:"):
        path = name[9:]
        with open(path) as fh:
            text = fh.read()
        try:
            values = json.loads(text)
        except json.JSONDecodeError:
            values = text.split()
        return from_list(values, name=name)
    raise UnknownName(f"unknown weight {name!r}; catalog: {', '.join(WEIGHT_CATALOG)}")


class Comparison(str, enum.Enum):
    """Outcome of comparing ``w(A \\ B)`` with ``w(B \\ A)``.

    ``A_SIDE``: ``w(A\\B) < w(B\\A)``, ``B_SIDE``: ``w(A\\B) > w(B\\A)``.
    Infinite values compare equal to each other.
    """

    A_SIDE = "A_side"
    B_SIDE = "B_side"
    EQUAL = "equal"


def weight_comparison(W: SetWeight, A: Iterable[int], B: Iterable[int]) -> Comparison:
    A, B = _as_set(A), _as_set(B)
    left = weight(W, A - B)
    right = weight(W, B - A)
    if left == right:
        return Comparison.EQUAL
    return Comparison.A_SIDE if left < right else Comparison.B_SIDE


def feasible(W: SetWeight, A: Iterable[int], B: Iterable[int]) -> bool:
    """``w(A \\ B) <= w(B \\ A)``."""
    return weight_comparison(W, A, B) is not Comparison.B_SIDE


@dataclass
class StructuredWeightReport:
    weight: str
    index_bound: int
    conditions: dict = field(default_factory=dict)
    f_witnesses: list = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return all(c["verdict"] in ("pass", "consistent") for c in self.conditions.values())

    def to_json_obj(self) -> dict:
        return {
            "weight": self.weight,
            "index_bound": self.index_bound,
            "conditions": self.conditions,
            "f_witnesses": [[N, eps] for N, eps in self.f_witnesses],
            "passes": self.passes,
        }


def _geometric_ks(bound: int, count: int) -> list[int]:
    if bound <= 1:
        return [1]
    ks = {max(1, round(bound ** (i / max(1, count - 1)))) for i in range(count)}
    ks.add(bound)
    return sorted(ks)


def check_structured(
    W: SetWeight,
    index_bound: int,
    prefix_samples: int = 12,
    seed: int = 0,
    candidates: Iterable[int] | None = None,
) -> StructuredWeightReport:
    """Check the structured-weight conditions on ``{1, ..., index_bound}``.

    (a), (c) are exact on singletons and checked on seeded random sets, (b)
    on the same sets.  (d) and (e) are limit statements; they are judged on
    families of tail windows and prefixes and never reported as proven.
    (f) computes, for each candidate N, the margin
    ``min_{n != N} w({N, n}) - w_n`` over the range.
    """
    rng = random.Random(seed)
    R = int(index_bound)
    rep = StructuredWeightReport(W.name, R)
    singles = [W.w_n(n) for n in range(1, R + 1)]

    rep.conditions["a"] = {"verdict": "pass" if weight(W, ()) == 0 else "fail"}

    sampled = []
    for _ in range(max(prefix_samples, 1) * 4):
        size = rng.randint(1, min(8, R))
        sampled.append(frozenset(rng.sample(range(1, R + 1), size)))
    sampled_w = [weight(W, A) for A in sampled]

    bad_b = [sorted(A) for A, v in zip(sampled, sampled_w) if math.isinf(v)]
    bad_b += [[n] for n, v in enumerate(singles, 1) if math.isinf(v)]
    rep.conditions["b"] = {"verdict": "fail" if bad_b else "pass", "witnesses": bad_b[:5]}

    bad_c = [[n] for n, v in enumerate(singles, 1) if not v > 0]
    bad_c += [sorted(A) for A, v in zip(sampled, sampled_w) if not v > 0]
    rep.conditions["c"] = {"verdict": "fail" if bad_c else "pass", "witnesses": bad_c[:5]}

    # (d): tail windows, singleton mass typically shrinking along the family
    width = min(8, R)
    starts = _geometric_ks(max(1, R - width + 1), prefix_samples)
    d_ev = []
    for j in starts:
        T = range(j, j + width)
        d_ev.append([j, math.fsum(singles[n - 1] for n in T), weight(W, T)])
    s0, w0 = d_ev[0][1], d_ev[0][2]
    s1, w1 = d_ev[-1][1], d_ev[-1][2]
    shrinking = s1 <= s0 / 4
    d_bad = shrinking and not w1 < w0
    rep.conditions["d"] = {
        "verdict": "violated on samples" if d_bad else "consistent",
        "evidence": d_ev,
        "mass_shrinks": shrinking,
    }

    # (e): prefixes L_k
    e_ev = []
    for k in _geometric_ks(R, prefix_samples):
        e_ev.append([k, math.fsum(singles[:k]), weight(W, range(1, k + 1))])
    s0, w0 = e_ev[0][1], e_ev[0][2]
    s1, w1 = e_ev[-1][1], e_ev[-1][2]
    mass_grows = s1 >= 4 * s0
    w_grows = w1 >= 2 * w0 and all(a[2] <= b[2] for a, b in zip(e_ev, e_ev[1:]))
    rep.conditions["e"] = {
        "verdict": "consistent" if (mass_grows and w_grows) else "violated on samples",
        "evidence": e_ev,
        "mass_grows": mass_grows,
    }

    cands = range(1, R + 1) if candidates is None else sorted(set(candidates))
    for N in cands:
        margin = INF
        for n in range(1, R + 1):
            if n == N:
                continue
            d = weight(W, (N, n)) - singles[n - 1]
            if d < margin:
                margin = d
        if margin > 0:
            rep.f_witnesses.append((N, margin))
    large = [N for N, _ in rep.f_witnesses if N > R // 2]
    rep.conditions["f"] = {
        "verdict": "pass" if large else "fail",
        "witness_count": len(rep.f_witnesses),
        "min_margin": min((e for _, e in rep.f_witnesses), default=None),
    }
    return rep
