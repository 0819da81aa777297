"""Brute-force oracles for the best-approximation error functionals.

Every oracle enumerates competitor sets inside a finite universe and returns
the minimum together with a replayable witness.  Ties in value are broken by
the lexicographically smallest (sorted) witness set, so the result does not
depend on how the enumeration is split across workers.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable

from .core import SparseVector, complement
from .parallel import chunks, pmap
from .spaces import NormSpace
from .tga import chebyshev_sum, partial_sum
from .weights import SetWeight, feasible

__all__ = [
    "OracleResult",
    "MAX_UNIVERSE",
    "default_universe",
    "sigma_m",
    "sigma_tilde_m",
    "sigma_omega",
    "sigma_tilde_omega",
    "sigma_bar_omega",
]

MAX_UNIVERSE = 22
WINDOW = 8


@dataclass(frozen=True)
class OracleResult:
    value: float
    witness_set: frozenset
    universe: tuple
    exact: bool
    coefficients: SparseVector | None = None
    k: int | None = None

    def replay(self, space: NormSpace, x: SparseVector) -> float:
        if self.k is not None:
            return space.evaluate(x - partial_sum(x, self.k))
        if self.coefficients is not None:
            return space.evaluate(x - self.coefficients)
        return space.evaluate(complement(x, self.witness_set))

    def to_json_obj(self) -> dict:
        w = {"set": [str(n) for n in sorted(self.witness_set)]}
        if self.coefficients is not None:
            w["coefficients"] = self.coefficients.to_json_obj()
        if self.k is not None:
            w["k"] = self.k
        return {
            "value": self.value,
            "witness": w,
            "universe": [str(n) for n in self.universe],
            "exact": self.exact,
        }


def _monotone_weight(W: SetWeight | None) -> bool:
    if W is None or W.kind in ("cardinality", "sequential"):
        return True
    if W.kind == "norm_induced":
        return W.space.is_lattice_monotone
    return False


def default_universe(
    space: NormSpace,
    x: SparseVector,
    extra: Iterable[int] = (),
    W: SetWeight | None = None,
    window: int = WINDOW,
) -> tuple[tuple, bool]:
    """Universe to search and whether the search over it is exact.

    For lattice norms and inclusion-monotone weights, indices off
    ``supp(x) | extra`` can be dropped from any competitor without loss.
    Otherwise ``window`` further indices (the smallest unused naturals) are
    added and the result is flagged inexact.
    """
    base = set(x.support()) | set(extra)
    if space.is_lattice_monotone and _monotone_weight(W):
        return tuple(sorted(base)), True
    n = 1
    added = 0
    while added < window:
        if n not in base:
            base.add(n)
            added += 1
        n += 1
    return tuple(sorted(base)), False


def _resolve(space, x, universe, extra=(), W=None):
    if universe is None:
        U, exact = default_universe(space, x, extra, W)
    else:
        U = tuple(sorted(set(universe)))
        missing = (x.support() | frozenset(extra)) - set(U)
        if missing:
            raise ValueError(f"universe misses indices {sorted(missing)[:5]}")
        exact = space.is_lattice_monotone and _monotone_weight(W)
    if len(U) > MAX_UNIVERSE:
        raise ValueError(f"universe of size {len(U)} exceeds the enumeration cap {MAX_UNIVERSE}")
    return U, exact


def _residual(space, x, A, free):
    if free:
        r = chebyshev_sum(space, x, A)
        return r.residual_norm, r.coefficients
    return space.evaluate(complement(x, A)), None


def _search(space, x, candidates, free, workers):
    """Minimum residual over ``candidates`` (sorted tuples)."""

    def run(part):
        best = None
        for A in part:
            v, coeffs = _residual(space, x, A, free)
            key = (v, A)
            if best is None or key < best[0]:
                best = (key, coeffs)
        return best

    parts = pmap(run, chunks(candidates, workers), workers)
    best = min((p for p in parts if p is not None), key=lambda p: p[0])
    (v, A), coeffs = best
    return v, A, coeffs


def _all_subsets(U):
    return list(chain.from_iterable(combinations(U, r) for r in range(len(U) + 1)))


def _sigma_m(space, x, m, universe, free, workers):
    if m < 0:
        raise ValueError("m must be nonnegative")
    U, exact = _resolve(space, x, universe)
    if m > len(U):
        raise ValueError(f"m={m} exceeds universe size {len(U)}")
    v, A, coeffs = _search(space, x, list(combinations(U, m)), free, workers)
    return OracleResult(v, frozenset(A), U, exact, coeffs)


def sigma_m(space, x, m, universe=None, workers=1) -> OracleResult:
    """Best m-term error with free coefficients."""
    return _sigma_m(space, x, m, universe, True, workers)


def sigma_tilde_m(space, x, m, universe=None, workers=1) -> OracleResult:
    """Best m-term error with projection coefficients."""
    return _sigma_m(space, x, m, universe, False, workers)


def _sigma_omega(space, W, x, B, universe, free, workers):
    B = frozenset(B)
    U, exact = _resolve(space, x, universe, extra=B, W=W)
    cands = [A for A in _all_subsets(U) if feasible(W, A, B)]
    v, A, coeffs = _search(space, x, cands, free, workers)
    return OracleResult(v, frozenset(A), U, exact, coeffs)


def sigma_omega(space, W, x, B, universe=None, workers=1) -> OracleResult:
    """``inf ||x - sum_{n in A} a_n e_n||`` over ``A`` with ``w(A\\B) <= w(B\\A)``."""
    return _sigma_omega(space, W, x, B, universe, True, workers)


def sigma_tilde_omega(space, W, x, B, universe=None, workers=1) -> OracleResult:
    """As :func:`sigma_omega` with projection competitors ``P_A(x)``."""
    return _sigma_omega(space, W, x, B, universe, False, workers)


def sigma_bar_omega(space, W, x, A, k_max=None) -> OracleResult:
    """``min ||x - S_k(x)||`` over ``k <= k_max`` with ``w(L_k\\A) <= w(A\\L_k)``."""
    A = frozenset(A)
    need = max(x.support() | A, default=0)
    if k_max is None:
        k_max = need
    if k_max < need:
        raise ValueError(f"k_max={k_max} below max(supp(x) | A)={need}")
    best = None
    for k in range(k_max + 1):
        L = frozenset(range(1, k + 1))
        if not feasible(W, L, A):
            continue
        v = space.evaluate(x - partial_sum(x, k))
        if best is None or v < best[0]:
            best = (v, k)
    v, k = best
    return OracleResult(v, frozenset(range(1, k + 1)), tuple(range(1, k_max + 1)), True, k=k)
