"""Exact counting recurrences for rooted maps and a provenance-checked table.

All values are Python integers.  Every recurrence that divides does so
through :func:`exact_div`, so a non-integral intermediate is a hard error
instead of a silently truncated count.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable

from .core import DegreeProfile


class NonIntegral(ArithmeticError):
    pass


class NegativeMultiplicity(ValueError):
    pass


class ProvenanceConflict(RuntimeError):
    pass


def exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise NonIntegral(f"{num} is not divisible by {den}")
    return q


def splits(total: int, low: int = 0):
    """Pairs ``(a, b)`` with ``a + b = total`` and both ``>= low``."""
    for a in range(low, total - low + 1):
        yield a, total - a


# -- planar maps -------------------------------------------------------------


@lru_cache(maxsize=None)
def q_planar(n: int, f: int) -> int:
    """Rooted planar maps with ``n`` edges and ``f`` faces."""
    if n < 0 or f < 1:
        return 0
    if n == 0:
        return int(f == 1)
    if f > n + 1:
        return 0
    total = 2 * (2 * n - 1) * (q_planar(n - 1, f) + q_planar(n - 1, f - 1))
    acc = 0
    for i, j in splits(n - 2):
        for f1, f2 in splits(f, 1):
            acc += (2 * i + 1) * (2 * j + 1) * q_planar(i, f1) * q_planar(j, f2)
    return exact_div(total + 3 * acc, n + 1)


@lru_cache(maxsize=None)
def t_planar(n: int) -> int:
    """Rooted planar cubic maps with ``3n`` edges (one map for ``n = 0``)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    acc = sum((3 * i + 2) * (3 * j + 2) * t_planar(i) * t_planar(j) for i, j in splits(n - 2))
    return exact_div(4 * (3 * n - 1) * t_planar(n - 1) + 4 * acc, n + 1)


# -- all genera ----------------------------------------------------------------


@lru_cache(maxsize=None)
def q_full(n: int, f: int, g: int) -> int:
    """Rooted maps of genus ``g`` with ``n`` edges and ``f`` faces."""
    if n < 0 or f < 1 or g < 0:
        return 0
    if n == 0:
        return int(f == 1 and g == 0)
    total = 2 * (2 * n - 1) * (q_full(n - 1, f, g) + q_full(n - 1, f - 1, g))
    total += (2 * n - 3) * (n - 1) * (2 * n - 1) * q_full(n - 2, f, g - 1)
    acc = 0
    for i, j in splits(n - 2):
        for f1, f2 in splits(f, 1):
            for g1, g2 in splits(g):
                acc += (2 * i + 1) * (2 * j + 1) * q_full(i, f1, g1) * q_full(j, f2, g2)
    return exact_div(total + 3 * acc, n + 1)


@lru_cache(maxsize=None)
def t_full(n: int, g: int) -> int:
    """Rooted cubic maps of genus ``g`` with ``3n`` edges."""
    if n < 0 or g < 0:
        return 0
    if n == 0:
        return int(g == 0)
    total = 4 * n * (3 * n - 2) * (3 * n - 4) * t_full(n - 2, g - 1)
    total += 4 * (3 * n - 1) * t_full(n - 1, g)
    acc = 0
    for i, j in splits(n - 2):
        for g1, g2 in splits(g):
            acc += (3 * i + 2) * (3 * j + 2) * t_full(i, g1) * t_full(j, g2)
    total += 4 * acc + 2 * int(n == 1 and g == 1)
    return exact_div(total, n + 1)


@lru_cache(maxsize=None)
def harer_zagier(n: int, g: int) -> int:
    """One-face rooted maps of genus ``g`` with ``n`` edges (gluings of a 2n-gon)."""
    if n < 0 or g < 0:
        return 0
    if n == 0:
        return int(g == 0)
    total = 2 * (2 * n - 1) * harer_zagier(n - 1, g)
    total += (n - 1) * (2 * n - 1) * (2 * n - 3) * harer_zagier(n - 2, g - 1)
    return exact_div(total, n + 1)


# -- degree profiles -------------------------------------------------------------


def delta_apply(profile: DegreeProfile, degrees: Iterable[int]) -> DegreeProfile:
    """Add one vertex of degree ``j`` for each positive ``j``, remove one for each ``-j``.

    A zero entry adds a vertex of degree 0, the lone vertex of the vertex map.
    """
    counts = profile.as_dict()
    for j in degrees:
        if j >= 0:
            counts[j] = counts.get(j, 0) + 1
        else:
            counts[-j] = counts.get(-j, 0) - 1
            if counts[-j] < 0:
                raise NegativeMultiplicity(f"no vertex of degree {-j} left to remove")
    return DegreeProfile.from_counts(counts)


def profile_minus(a: DegreeProfile, b: DegreeProfile) -> DegreeProfile | None:
    """``a - b`` componentwise, or None when some multiplicity goes negative."""
    counts = a.as_dict()
    for d, c in b.counts:
        left = counts.get(d, 0) - c
        if left < 0:
            return None
        counts[d] = left
    return DegreeProfile.from_counts(counts)


# -- table with provenance ---------------------------------------------------------

PROVENANCES = ("recurrence", "enumeration")


@dataclass
class Entry:
    value: int
    provenance: set[str] = field(default_factory=set)


class CountTable:
    """Append-only store of counts; a key written twice must keep its value.

    Keys are tuples whose first item names the family, for instance
    ``("Q", n, f)``, ``("Qg", n, f, g)``, ``("T", n)``, ``("Tg", n, g)``,
    ``("alpha", n, f, g)``, ``("alpha_k", k, n, f, g)`` or
    ``("M", r, f, profile_key)``.
    """

    def __init__(self):
        self._entries: dict[tuple, Entry] = {}

    def record(self, key: tuple[Hashable, ...], value: int, provenance: str) -> int:
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        if value < 0:
            raise ValueError(f"negative count for {key}")
        entry = self._entries.get(key)
        if entry is None:
            self._entries[key] = Entry(value, {provenance})
        elif entry.value != value:
            raise ProvenanceConflict(
                f"{key}: {sorted(entry.provenance)} gave {entry.value}, {provenance} gives {value}"
            )
        else:
            entry.provenance.add(provenance)
        return value

    def get(self, key: tuple, default: int | None = None) -> int | None:
        entry = self._entries.get(key)
        return default if entry is None else entry.value

    def provenance(self, key: tuple) -> frozenset[str]:
        entry = self._entries.get(key)
        return frozenset() if entry is None else frozenset(entry.provenance)

    def __contains__(self, key: tuple) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def items(self):
        return ((k, e.value) for k, e in sorted(self._entries.items(), key=lambda kv: repr(kv[0])))

    def to_json(self) -> list[dict]:
        return [
            {"key": list(k), "value": str(e.value), "provenance": sorted(e.provenance)}
            for k, e in sorted(self._entries.items(), key=lambda kv: repr(kv[0]))
        ]
