"""Thresholding greedy algorithm: greedy sets, greedy and partial sums,
truncation, and Chebyshev greedy sums."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import SparseVector, complement, project, sgn
from .spaces import NormSpace

__all__ = [
    "GreedySelection",
    "NotGreedyError",
    "greedy_sets",
    "is_greedy_set",
    "greedy_sum",
    "partial_sum",
    "truncate",
    "truncate_scalar",
    "ChebyshevResult",
    "chebyshev_sum",
    "golden_section",
]

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class NotGreedyError(ValueError):
    pass


@dataclass(frozen=True)
class GreedySelection:
    indices: frozenset
    threshold_in: float
    threshold_out: float
    tie_class: tuple

    @property
    def m(self) -> int:
        return len(self.indices)

    def sorted(self) -> tuple:
        return tuple(sorted(self.indices))

    def to_json_obj(self) -> dict:
        return {
            "set": [str(n) for n in self.sorted()],
            "threshold_in": self.threshold_in,
            "threshold_out": self.threshold_out,
            "tie_class": [str(n) for n in self.tie_class],
        }


def _threshold_out(x: SparseVector, A: frozenset) -> float:
    return max((abs(c) for n, c in x.items() if n not in A), default=0.0)


def _threshold_in(x: SparseVector, A: frozenset) -> float:
    return min((abs(x[n]) for n in A), default=math.inf)


def is_greedy_set(x: SparseVector, A: Iterable[int]) -> bool:
    A = frozenset(A)
    return _threshold_in(x, A) >= _threshold_out(x, A)


def greedy_sets(
    x: SparseVector,
    m: int,
    mode: str = "all",
    universe: Iterable[int] | None = None,
) -> list[GreedySelection]:
    """Greedy sets of order ``m`` of ``x``.

    ``mode="all"`` enumerates every tie branch (sorted lexicographically),
    ``mode="one"`` returns the single set that breaks ties by smallest index.
    When ``m`` exceeds the support size the set is padded with zero-coefficient
    indices from ``universe`` (default ``{1, ..., max(max support, m)}``).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if mode not in ("all", "one"):
        raise ValueError(f"unknown mode {mode!r}")
    supp = x.support()
    mags = sorted(((abs(c), n) for n, c in x.items()), key=lambda t: (-t[0], t[1]))

    if m <= len(supp):
        if m == 0:
            t_out = mags[0][0] if mags else 0.0
            return [GreedySelection(frozenset(), math.inf, t_out, ())]
        t = mags[m - 1][0]
        greater = frozenset(n for a, n in mags if a > t)
        tie = tuple(sorted(n for a, n in mags if a == t))
        need = m - len(greater)
        combos = combinations(tie, need) if mode == "all" else [tie[:need]]
        t_out = max((a for a, _ in mags[m:]), default=0.0)
        return [GreedySelection(greater | frozenset(c), t, t_out, tie) for c in combos]

    if universe is None:
        universe = range(1, max(x.max_index(), m) + 1)
    zeros = tuple(sorted(set(universe) - supp))
    need = m - len(supp)
    if need > len(zeros):
        raise ValueError(f"m={m} exceeds support plus universe slack ({len(supp) + len(zeros)})")
    combos = combinations(zeros, need) if mode == "all" else [zeros[:need]]
    return [GreedySelection(supp | frozenset(c), 0.0, 0.0, zeros) for c in combos]


def greedy_sum(x: SparseVector, selection) -> SparseVector:
    A = selection.indices if isinstance(selection, GreedySelection) else frozenset(selection)
    if not is_greedy_set(x, A):
        raise NotGreedyError(f"{sorted(A)} is not a greedy set of x")
    return project(x, A)


def partial_sum(x: SparseVector, k: int) -> SparseVector:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return SparseVector({n: c for n, c in x.items() if n <= k})


def truncate_scalar(b: float, alpha: float) -> float:
    return sgn(b) * alpha if abs(b) > alpha else b


def truncate(x: SparseVector, alpha: float) -> SparseVector:
    """Clip every coefficient with ``|c| > alpha`` to ``sgn(c) * alpha``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    return SparseVector({n: truncate_scalar(c, alpha) for n, c in x.items()})


@dataclass(frozen=True)
class ChebyshevResult:
    coefficients: SparseVector
    residual_norm: float
    certified_gap: float
    converged: bool = True
    sweeps: int = 0

    def to_json_obj(self) -> dict:
        return {
            "coefficients": self.coefficients.to_json_obj(),
            "residual_norm": self.residual_norm,
            "certified_gap": self.certified_gap,
            "converged": self.converged,
        }


def golden_section(f, lo: float, hi: float, xtol: float, f_lo=None, f_hi=None):
    """Minimize a unimodal ``f`` on ``[lo, hi]``; returns ``(t, f(t))``."""
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    best = min((fc, c), (fd, d))
    # endpoints can hold the minimum of a monotone piece
    for t, ft in ((lo, f_lo), (hi, f_hi)):
        ft = f(t) if ft is None else ft
        if ft < best[0]:
            best = (ft, t)
    return best[1], best[0]


def chebyshev_sum(
    space: NormSpace,
    x: SparseVector,
    Lam: Iterable[int],
    tol: float = 1e-10,
    max_sweeps: int = 200,
) -> ChebyshevResult:
    """Best approximation of ``x`` by vectors supported on ``Lam``.

    On lattice-monotone norms the projection onto ``Lam`` is optimal and is
    returned with zero gap.  Otherwise cyclic coordinate descent (plus the
    pairwise directions ``e_i +/- e_j`` to get past kinks of max-type norms)
    with golden-section line searches, started from the projection, runs
    until a sweep improves by less than ``tol``.  ``certified_gap`` is the
    last sweep's improvement.
    """
    Lam = tuple(sorted(set(Lam)))
    if space.is_lattice_monotone or not Lam:
        coeffs = project(x, Lam)
        return ChebyshevResult(coeffs, space.evaluate(complement(x, Lam)), 0.0)

    ev = space.evaluate
    xn = ev(x)
    if xn == 0.0:
        return ChebyshevResult(SparseVector(), 0.0, 0.0)
    # |x_n - a_n| <= c2* ||x - a|| <= c2* ||x|| at any point no worse than a = 0
    M = max(
        x.sup_norm() + space.c2_star * xn,
        2.0 * x.sup_norm() * len(Lam) * (space.c2 / space.c1),
    )
    xtol = tol / max(1.0, space.c2)
    a = {n: x[n] for n in Lam}

    def resid(coeffs):
        return ev(x - SparseVector(coeffs))

    cur = resid(a)
    directions = [((n, 1.0),) for n in Lam]
    for i, j in combinations(Lam, 2):
        directions.append(((i, 1.0), (j, 1.0)))
        directions.append(((i, 1.0), (j, -1.0)))

    improvement = math.inf
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        start = cur
        for d in directions:
            base = dict(a)

            def phi(t, base=base, d=d):
                trial = dict(base)
                for n, s in d:
                    trial[n] = base[n] + s * t
                return resid(trial)

            t, val = golden_section(phi, -2.0 * M, 2.0 * M, xtol)
            if val < cur:
                for n, s in d:
                    a[n] = base[n] + s * t
                cur = val
        improvement = start - cur
        if improvement < tol:
            break
    return ChebyshevResult(
        SparseVector(a), cur, improvement, converged=improvement < tol, sweeps=sweeps
    )
