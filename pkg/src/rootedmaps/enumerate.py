"""Exhaustive generation of rooted maps up to isomorphism.

Maps are generated directly in canonical form: darts are processed in label
order and ``sigma(i)`` is either an already labelled dart without a preimage
or the next fresh edge.  Each rooted map is produced exactly once, in
increasing canonical-code order, so no deduplication pass is needed.  A naive
generator over all rotations is kept as an oracle for small sizes.
"""
from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (
    VERTEX_MAP,
    RootedMap,
    canonical_code,
    classify_family,
    degree_profile,
    is_connected,
)


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumFilter:
    faces: Optional[int] = None
    genus: Optional[int] = None
    family: str = "all"  # all | precubic | cubic
    max_degree: Optional[int] = None

    def __post_init__(self):
        if self.family not in ("all", "maps", "precubic", "cubic"):
            raise ValueError(f"unknown family {self.family!r}")

    def accepts(self, m: RootedMap) -> bool:
        if self.faces is not None and m.num_faces != self.faces:
            return False
        if self.genus is not None and m.genus != self.genus:
            return False
        if self.max_degree is not None and any(len(c) > self.max_degree for c in m.vertices):
            return False
        if self.family == "precubic" and not classify_family(m).is_precubic:
            return False
        if self.family == "cubic" and not classify_family(m).is_cubic:
            return False
        return True


@dataclass
class Budget:
    max_seconds: Optional[float] = None
    max_instances: Optional[int] = None

    def __post_init__(self):
        self._start = time.monotonic()
        self._count = 0

    def tick(self) -> None:
        self._count += 1
        if self.max_instances is not None and self._count > self.max_instances:
            raise BudgetExceeded(f"more than {self.max_instances} instances")
        if self.max_seconds is not None and self._count % 1024 == 0:
            if time.monotonic() - self._start > self.max_seconds:
                raise BudgetExceeded(f"over {self.max_seconds}s")


def _degree_sets(n_edges: int, flt: EnumFilter) -> tuple[Optional[frozenset], Optional[frozenset]]:
    """Allowed vertex degrees and allowed root degrees (None = anything)."""
    top = 2 * n_edges
    if flt.family == "precubic":
        allowed, root = frozenset({1, 3}), frozenset({1})
    elif flt.family == "cubic":
        allowed, root = frozenset({3}), frozenset({3})
    else:
        allowed = root = None
    if flt.max_degree is not None:
        cap = frozenset(range(1, flt.max_degree + 1))
        allowed = cap if allowed is None else allowed & cap
        root = cap if root is None else root & cap
    if allowed is None:
        return None, None
    return frozenset(d for d in allowed if d <= top), frozenset(d for d in root if d <= top)


def generate_sigmas(n_edges: int, allowed=None, root_allowed=None) -> Iterator[tuple[int, ...]]:
    """Canonical rotations of all rooted maps with ``n_edges`` edges, root dart 0."""
    size = 2 * n_edges
    if size == 0:
        return
    cap = None
    if allowed is not None:
        cap = max(allowed | root_allowed, default=0)
    sigma = [-1] * size
    has_pre = [False] * size
    # open sigma-chains: head <-> tail, length and root membership stored at the head
    head_of = list(range(size))
    tail_of = list(range(size))
    length = [1] * size
    rooted = [False] * size
    rooted[0] = True

    def step(i: int, labelled: int):
        if i == size:
            yield tuple(sigma)
            return
        if i >= labelled:
            return  # disconnected
        h = head_of[i]
        candidates = [j for j in range(labelled) if not has_pre[j]]
        if labelled < size:
            candidates.append(labelled)
        for j in candidates:
            fresh = j == labelled
            if fresh:
                # new edge (j, j+1): each dart starts as its own chain
                head_of[j] = tail_of[j] = j
                head_of[j + 1] = tail_of[j + 1] = j + 1
                length[j] = length[j + 1] = 1
                rooted[j] = rooted[j + 1] = False
            if j == h:
                # closes a vertex
                if cap is not None:
                    deg = length[h]
                    ok = deg in (root_allowed if rooted[h] else allowed)
                    if not ok:
                        continue
                sigma[i] = j
                has_pre[j] = True
                yield from step(i + 1, labelled + (2 if fresh else 0))
                has_pre[j] = False
                sigma[i] = -1
                continue
            t2 = tail_of[j]
            new_len = length[h] + length[j]
            if cap is not None:
                limit = max(root_allowed) if (rooted[h] or rooted[j]) else max(allowed)
                if new_len > limit:
                    continue
            old = (tail_of[h], head_of[t2], length[h], rooted[h])
            tail_of[h] = t2
            head_of[t2] = h
            length[h] = new_len
            rooted[h] = rooted[h] or rooted[j]
            sigma[i] = j
            has_pre[j] = True
            yield from step(i + 1, labelled + (2 if fresh else 0))
            has_pre[j] = False
            sigma[i] = -1
            tail_of[h], head_of[t2], length[h], rooted[h] = old

    yield from step(0, 2)


def enumerate_maps(
    n_edges: int,
    flt: Optional[EnumFilter] = None,
    budget: Optional[Budget] = None,
) -> Iterator[RootedMap]:
    """Every rooted map with ``n_edges`` edges accepted by ``flt``, once each."""
    if n_edges < 0:
        raise ValueError("n_edges must be non-negative")
    flt = flt or EnumFilter()
    if n_edges == 0:
        if flt.family in ("all", "maps") and flt.max_degree is None and flt.accepts(VERTEX_MAP):
            yield VERTEX_MAP
        return
    allowed, root_allowed = _degree_sets(n_edges, flt)
    if allowed is not None and (not allowed or not root_allowed):
        return
    for sigma in generate_sigmas(n_edges, allowed, root_allowed):
        if budget is not None:
            budget.tick()
        m = RootedMap(n_edges, sigma, 0)
        if flt.accepts(m):
            yield m


def naive_enumerate(n_edges: int) -> list[RootedMap]:
    """Brute force over every rotation with root dart 0, deduplicated by code.

    Feasible for ``n_edges <= 4``; used to check :func:`enumerate_maps`.
    """
    if n_edges == 0:
        return [VERTEX_MAP]
    found = {}
    for perm in itertools.permutations(range(2 * n_edges)):
        m = RootedMap(n_edges, perm, 0)
        if not is_connected(m):
            continue
        code = canonical_code(m)
        found.setdefault(code, m)
    return [found[c] for c in sorted(found)]


GROUPINGS = ("none", "faces", "genus", "faces-genus", "degree-profile")


def group_key(m: RootedMap, group_by: str):
    if group_by == "none":
        return "all"
    if group_by == "faces":
        return m.num_faces
    if group_by == "genus":
        return m.genus
    if group_by == "faces-genus":
        return (m.num_faces, m.genus)
    if group_by == "degree-profile":
        profile, r = degree_profile(m)
        return (r, profile.key())
    raise ValueError(f"unknown grouping {group_by!r}")


def count_maps(
    n_edges: int,
    flt: Optional[EnumFilter] = None,
    group_by: str = "none",
    budget: Optional[Budget] = None,
) -> dict:
    counts: Counter = Counter()
    for m in enumerate_maps(n_edges, flt, budget):
        counts[group_key(m, group_by)] += 1
    return dict(sorted(counts.items(), key=lambda kv: str(kv[0]) if group_by == "degree-profile" else kv[0]))
