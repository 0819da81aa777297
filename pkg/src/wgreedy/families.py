"""Deterministic, seeded test families.

Each generator takes an explicit seed and returns a list, so a family can be
regenerated exactly from ``(generator, arguments, seed)``.
"""
from __future__ import annotations

import random
from itertools import combinations, product

from .core import SparseVector
from .weights import SetWeight, weight

__all__ = [
    "m3_indices",
    "random_vector",
    "random_vectors",
    "random_signs",
    "all_signs",
    "property_A_tuples",
    "pslc_tuples",
    "set_pairs",
    "ordered_set_pairs",
    "vector_m_pairs",
]

_TIE_LEVELS = (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0)


def m3_indices(d: int) -> list[int]:
    """First ``d`` of ``2, 3, 4, 9, 8, 27, ...`` (powers of 2 and 3 interleaved)."""
    out = []
    k = 1
    while len(out) < d:
        out.append(2 ** k)
        if len(out) < d:
            out.append(3 ** k)
        k += 1
    return sorted(out)


def random_vector(rng: random.Random, indices, density: float = 0.85, ties: bool = True) -> SparseVector:
    """Random coefficients on ``indices``; some zeros, and (with ``ties``)
    half the draws come from a small integer grid to provoke tie classes."""
    grid = ties and rng.random() < 0.5
    out = {}
    for n in indices:
        if rng.random() > density:
            continue
        out[n] = rng.choice(_TIE_LEVELS) if grid else rng.uniform(-4.0, 4.0)
    return SparseVector(out)


def random_vectors(dim_or_indices, count: int, seed: int, **kw) -> list[SparseVector]:
    rng = random.Random(seed)
    idx = range(1, dim_or_indices + 1) if isinstance(dim_or_indices, int) else list(dim_or_indices)
    return [random_vector(rng, idx, **kw) for _ in range(count)]


def random_signs(rng: random.Random, A) -> dict[int, int]:
    return {n: rng.choice((1, -1)) for n in sorted(A)}


def all_signs(A):
    A = sorted(A)
    for signs in product((1, -1), repeat=len(A)):
        yield dict(zip(A, signs))


def _unit_vector(rng, indices):
    # ||x||_inf <= 1, with occasional exact 1's
    out = {}
    for n in indices:
        r = rng.random()
        if r < 0.25:
            continue
        out[n] = rng.choice((1.0, -1.0)) if r > 0.85 else rng.uniform(-1.0, 1.0)
    return SparseVector(out)


def property_A_tuples(
    W: SetWeight,
    indices,
    count: int,
    seed: int,
    max_set: int = 3,
    reverse: bool = False,
):
    """Tuples ``(x, A, B, eps, delta)`` with ``A, B, supp(x)`` pairwise disjoint,
    ``||x||_inf <= 1`` and ``w(A) <= w(B)`` (``w(A) >= w(B)`` if ``reverse``).

    Indices are shuffled and split three ways; candidates failing the weight
    constraint are swapped (A <-> B), so every draw is used.
    """
    rng = random.Random(seed)
    indices = list(indices)
    out = []
    while len(out) < count:
        pool = indices[:]
        rng.shuffle(pool)
        a = rng.randint(0, min(max_set, len(pool)))
        room = min(max_set, len(pool) - a)
        b = rng.randint(1 if (a and room) else 0, room)
        A = frozenset(pool[:a])
        B = frozenset(pool[a:a + b])
        rest = pool[a + b:]
        xs = rest[: rng.randint(0, len(rest))]
        x = _unit_vector(rng, xs) if rng.random() > 0.1 else SparseVector()
        wa, wb = weight(W, A), weight(W, B)
        if (wa > wb) != reverse and wa != wb:
            A, B = B, A
        out.append((x, A, B, random_signs(rng, A), random_signs(rng, B)))
    return out


def pslc_tuples(W: SetWeight, dim: int, count: int, seed: int, max_set: int = 3):
    """Tuples ``(x, A, B, eps, delta)`` with ``A < supp(x) | B`` (every element of
    A below every element of ``supp(x) | B``), disjoint, ``w(A) <= w(B)``."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        cut = rng.randint(0, dim)
        left = list(range(1, cut + 1))
        right = list(range(cut + 1, dim + 1))
        A = frozenset(rng.sample(left, rng.randint(0, min(max_set, len(left)))))
        rng.shuffle(right)
        b = rng.randint(0, min(max_set, len(right)))
        B = frozenset(right[:b])
        rest = right[b:]
        x = _unit_vector(rng, rest[: rng.randint(0, len(rest))])
        if weight(W, A) > weight(W, B):
            continue
        out.append((x, A, B, random_signs(rng, A), random_signs(rng, B)))
    return out


def set_pairs(indices, max_size: int, disjoint: bool = True):
    """All pairs of nonempty subsets of ``indices`` up to ``max_size``."""
    indices = sorted(indices)
    subsets = [frozenset(c) for r in range(1, max_size + 1) for c in combinations(indices, r)]
    for A in subsets:
        for B in subsets:
            if disjoint and A & B:
                continue
            yield A, B


def ordered_set_pairs(indices, max_size: int):
    """Pairs with ``A < B``: every element of A is below every element of B."""
    for A, B in set_pairs(indices, max_size, disjoint=True):
        if max(A) < min(B):
            yield A, B


def vector_m_pairs(vectors, max_m: int | None = None):
    """``(x, m)`` for every ``m`` from 0 to ``|supp(x)|`` (capped by ``max_m``)."""
    for x in vectors:
        top = len(x) if max_m is None else min(len(x), max_m)
        for m in range(top + 1):
            yield x, m
