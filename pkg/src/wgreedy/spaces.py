"""Norm evaluators on finitely supported sequences, with structural metadata."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import SparseVector

__all__ = [
    "NormSpace",
    "UnknownName",
    "norm_lp",
    "split_lorentz_norm",
    "norm_theorem_m3",
    "m3_space",
    "summing_norm",
    "summing_space",
    "is_power_of_two",
    "get_space",
    "SPACE_CATALOG",
    "NormAxiomReport",
    "check_norm_axioms",
]


class UnknownName(ValueError):
    """Raised for catalog lookups of unknown space or weight names."""


@dataclass(frozen=True)
class NormSpace:
    name: str
    evaluate: Callable[[SparseVector], float] = field(compare=False, repr=False)
    is_lattice_monotone: bool = False
    known_K_s: float | None = None
    known_K_u: float | None = None
    known_K_b: float | None = None
    known_C_l: float | None = None
    c1: float = 1.0
    c2: float = 1.0
    c1_star: float = 1.0
    c2_star: float = 1.0
    # exponent for the lp family (math.inf for the sup-norm), None otherwise
    p: float | None = None
    # extra example outside the core catalog, e.g. the conditional summing norm
    supplementary: bool = False
    constants_estimated: bool = False

    def __call__(self, x: SparseVector) -> float:
        return self.evaluate(x)

    def flags(self) -> dict:
        return {
            "is_lattice_monotone": self.is_lattice_monotone,
            "known_K_s": self.known_K_s,
            "known_K_u": self.known_K_u,
            "known_K_b": self.known_K_b,
            "known_C_l": self.known_C_l,
            "c1": self.c1,
            "c2": self.c2,
            "c1_star": self.c1_star,
            "c2_star": self.c2_star,
            "supplementary": self.supplementary,
        }


def _lattice(name, fn, p=None) -> NormSpace:
    return NormSpace(
        name=name,
        evaluate=fn,
        is_lattice_monotone=True,
        known_K_s=1.0,
        known_K_u=1.0,
        known_K_b=1.0,
        known_C_l=1.0,
        p=p,
    )


def norm_lp(p: float) -> NormSpace:
    """The lp norm on sequences; ``p = math.inf`` gives the sup-norm."""
    p = float(p)
    if not p >= 1:
        raise ValueError(f"lp norm needs p >= 1, got {p}")
    if math.isinf(p):
        return _lattice("linf", lambda x: x.sup_norm(), p=math.inf)
    if p == 1.0:
        return _lattice("l1", lambda x: math.fsum(abs(c) for c in x.values()), p=1.0)
    if p == 2.0:
        return _lattice("l2", lambda x: math.sqrt(math.fsum(c * c for c in x.values())), p=2.0)

    def ev(x: SparseVector) -> float:
        return math.fsum(abs(c) ** p for c in x.values()) ** (1.0 / p)

    return _lattice(f"lp:{p:g}", ev, p=p)


def is_power_of_two(n: int) -> bool:
    """Membership in ``{2**k : k >= 1}`` (so 1 is excluded)."""
    return n >= 2 and n & (n - 1) == 0


def split_lorentz_norm(x: SparseVector) -> float:
    """Sum of two rearrangement norms on the dyadic / non-dyadic coordinates.

    Coordinates at powers of two are paired in decreasing order with the
    weights ``1/sqrt(j)``, all other coordinates with ``1/j``.  Both weight
    sequences decrease, so pairing sorted magnitudes with sorted weights
    attains the supremum over bijections.
    """
    dyadic = []
    rest = []
    for n, c in x.items():
        (dyadic if is_power_of_two(n) else rest).append(abs(c))
    dyadic.sort(reverse=True)
    rest.sort(reverse=True)
    s = math.fsum(u / math.sqrt(j) for j, u in enumerate(dyadic, 1))
    t = math.fsum(v / j for j, v in enumerate(rest, 1))
    return s + t


norm_theorem_m3 = split_lorentz_norm


def m3_space() -> NormSpace:
    return _lattice("m3", split_lorentz_norm)


def summing_norm(x: SparseVector) -> float:
    """``max(||x||_inf, sup_k |x_1 + ... + x_k|)``; not a lattice norm."""
    best = x.sup_norm()
    run = 0.0
    for c in x.values():
        run += c
        best = max(best, abs(run))
    return best


def summing_space() -> NormSpace:
    # partial sums S_k(x) have the first k running sums of x, so ||S_k|| <= 1
    return NormSpace(
        name="summing",
        evaluate=summing_norm,
        is_lattice_monotone=False,
        known_K_b=1.0,
        supplementary=True,
    )


SPACE_CATALOG = ("l1", "l2", "linf", "lp:<p>", "m3", "summing")


def get_space(name: str) -> NormSpace:
    if name == "l1":
        return norm_lp(1)
    if name == "l2":
        return norm_lp(2)
    if name == "linf":
        return norm_lp(math.inf)
    if name == "m3":
        return m3_space()
    if name == "summing":
        return summing_space()
    if name.startswith("lp:"):
        raw = name[3:]
        try:
            p = float(raw)
        except ValueError:
            raise UnknownName(f"bad exponent in {name!r}") from None
        return norm_lp(p)
    raise UnknownName(f"unknown space {name!r}; catalog: {', '.join(SPACE_CATALOG)}")


@dataclass
class NormAxiomReport:
    space: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _close_enough(lhs, rhs, tol):
    return abs(lhs - rhs) <= tol * max(1.0, abs(lhs), abs(rhs))


def check_norm_axioms(
    space: NormSpace,
    samples: Sequence[SparseVector],
    tol: float = 1e-9,
    seed: int = 0,
) -> NormAxiomReport:
    """Check the norm axioms and declared flags of ``space`` on ``samples``.

    Homogeneity uses the scalars -1, 2.5 and -0.3; the triangle inequality is
    checked on all ordered pairs; lattice monotonicity (when flagged) on
    random coordinatewise shrinkings; semi-normalization on every index that
    appears in a sample.
    """
    if not samples:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    rep = NormAxiomReport(space.name)
    ev = space.evaluate

    def bad(kind, **info):
        rep.violations.append({"axiom": kind, **info})

    z = ev(SparseVector())
    rep.checked += 1
    if abs(z) > tol:
        bad("zero", value=z)

    values = [ev(x) for x in samples]
    for x, v in zip(samples, values):
        rep.checked += 1
        if x and not v > 0:
            bad("positivity", x=x.to_json_obj(), value=v)
        for lam in (-1.0, 2.5, -0.3):
            rep.checked += 1
            lhs = ev(lam * x)
            if not _close_enough(lhs, abs(lam) * v, tol):
                bad("homogeneity", x=x.to_json_obj(), scalar=lam, lhs=lhs, rhs=abs(lam) * v)

    for i, x in enumerate(samples):
        for j, y in enumerate(samples):
            if j < i:
                continue
            rep.checked += 1
            lhs = ev(x + y)
            rhs = values[i] + values[j]
            if lhs > rhs + tol * max(1.0, rhs):
                bad("triangle", x=x.to_json_obj(), y=y.to_json_obj(), lhs=lhs, rhs=rhs)

    if space.is_lattice_monotone:
        for x, v in zip(samples, values):
            y = SparseVector({n: c * rng.random() for n, c in x.items()})
            rep.checked += 1
            if ev(y) > v + tol * max(1.0, v):
                bad("lattice", x=x.to_json_obj(), y=y.to_json_obj())

    seen = sorted({n for x in samples for n in x})
    for n in seen:
        rep.checked += 1
        en = ev(SparseVector.basis(n))
        if not (space.c1 - tol <= en <= space.c2 + tol):
            bad("semi-normalization", index=str(n), value=en)
    return rep
