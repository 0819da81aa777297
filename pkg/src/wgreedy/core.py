"""Finitely supported coefficient sequences over the natural numbers.

Indices are plain Python ints (unbounded), so indices such as ``3**40`` are
represented exactly.  Coefficients are floats.  Every vector is immutable and
stored in canonical form: no explicit zeros, keys sorted.
"""
from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping

__all__ = [
    "SparseVector",
    "IncompleteSignPattern",
    "coefficient",
    "project",
    "signed_indicator",
    "indicator",
    "sgn",
    "sign_pattern",
    "complement",
]


def _check_index(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"index must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    return n


class SparseVector:
    """Immutable map ``index -> coefficient`` with implicit zeros elsewhere."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[int, float] = {}
        for n, c in items:
            n = _check_index(n)
            c = float(c)
            if c != c:
                raise ValueError(f"NaN coefficient at index {n}")
            acc[n] = acc.get(n, 0.0) + c
        self._entries = {n: acc[n] for n in sorted(acc) if acc[n] != 0.0}
        self._hash = None

    @classmethod
    def zero(cls) -> "SparseVector":
        return cls()

    @classmethod
    def basis(cls, n: int, c: float = 1.0) -> "SparseVector":
        return cls({n: c})

    # -- mapping-ish access -------------------------------------------------
    def __getitem__(self, n: int) -> float:
        return self._entries.get(n, 0.0)

    def __iter__(self) -> Iterator[int]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def items(self):
        return self._entries.items()

    def values(self):
        return self._entries.values()

    def support(self) -> frozenset[int]:
        return frozenset(self._entries)

    def max_index(self) -> int:
        """Largest support index, 0 for the zero vector."""
        return next(reversed(self._entries), 0) if self._entries else 0

    def sup_norm(self) -> float:
        return max((abs(c) for c in self._entries.values()), default=0.0)

    def abs(self) -> "SparseVector":
        return SparseVector({n: abs(c) for n, c in self._entries.items()})

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        out = dict(self._entries)
        for n, c in other._entries.items():
            out[n] = out.get(n, 0.0) + c
        return SparseVector(out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        out = dict(self._entries)
        for n, c in other._entries.items():
            out[n] = out.get(n, 0.0) - c
        return SparseVector(out)

    def __neg__(self) -> "SparseVector":
        return SparseVector({n: -c for n, c in self._entries.items()})

    def __mul__(self, scalar: float) -> "SparseVector":
        if isinstance(scalar, SparseVector):
            return NotImplemented
        return SparseVector({n: scalar * c for n, c in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{n}: {c!r}" for n, c in self._entries.items())
        return f"SparseVector({{{body}}})"

    # -- serialization --------------------------------------------------------
    def to_json_obj(self) -> dict:
        return {"entries": [[str(n), c] for n, c in self._entries.items()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "SparseVector":
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ValueError('vector JSON must be an object with an "entries" list')
        rows = obj["entries"]
        if not isinstance(rows, list):
            raise ValueError('"entries" must be a list of [index, coefficient] pairs')
        out = {}
        prev = 0
        for row in rows:
            if not isinstance(row, (list, tuple)) or len(row) != 2:
                raise ValueError(f"malformed entry {row!r}")
            raw, c = row
            if isinstance(raw, bool) or not isinstance(raw, (str, int)):
                raise ValueError(f"index must be a decimal string, got {raw!r}")
            try:
                n = int(raw)
            except ValueError:
                raise ValueError(f"index must be a decimal string, got {raw!r}") from None
            if n <= prev:
                raise ValueError("indices must be positive and strictly increasing")
            if isinstance(c, bool) or not isinstance(c, (int, float)):
                raise ValueError(f"coefficient must be a number, got {c!r}")
            out[n] = c
            prev = n
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> "SparseVector":
        return cls.from_json_obj(json.loads(text))


class IncompleteSignPattern(KeyError):
    """A sign pattern was applied to an index it does not define."""


def coefficient(x: SparseVector, n: int) -> float:
    return x[n]


def project(x: SparseVector, A: Iterable[int]) -> SparseVector:
    A = A if isinstance(A, (set, frozenset)) else frozenset(A)
    return SparseVector({n: c for n, c in x.items() if n in A})


def complement(x: SparseVector, A: Iterable[int]) -> SparseVector:
    """``x - P_A(x)``: the part of ``x`` living off ``A``."""
    A = A if isinstance(A, (set, frozenset)) else frozenset(A)
    return SparseVector({n: c for n, c in x.items() if n not in A})


def sgn(c: float) -> int:
    # zero maps to +1
    return -1 if c < 0 else 1


def signed_indicator(A: Iterable[int], eps: Mapping[int, int] | None = None) -> SparseVector:
    """``sum_{n in A} eps_n e_n``; ``eps=None`` means all signs +1."""
    out = {}
    for n in A:
        if eps is None:
            s = 1
        else:
            try:
                s = eps[n]
            except KeyError:
                raise IncompleteSignPattern(n) from None
            if s not in (1, -1):
                raise ValueError(f"sign at {n} must be +1 or -1, got {s!r}")
        out[n] = float(s)
    return SparseVector(out)


def indicator(A: Iterable[int]) -> SparseVector:
    return signed_indicator(A)


def sign_pattern(x: SparseVector, A: Iterable[int]) -> dict[int, int]:
    """Signs of ``x`` on ``A`` (``+1`` where ``x`` vanishes)."""
    return {n: sgn(x[n]) for n in A}
