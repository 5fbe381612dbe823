"""Mutable rotation systems used while cutting and gluing maps.

During surgery the root arrow is modelled as a virtual dart (a negative
integer) inserted in the root vertex just before the root dart.  The corner
preceding a real dart is then unambiguous, and the corner preceding the
virtual dart is the half of the root corner that lies before the arrow.  A
vertex map is a vertex holding only its virtual dart.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .core import (
    VERTEX_MAP,
    Disconnected,
    InternalInconsistency,
    RootedMap,
    relabel_from_root,
)

ROOT = -1


class Rotation:
    """Vertex rotation plus edge pairing over arbitrary integer darts."""

    def __init__(self, succ: dict[int, int], alpha: dict[int, int]):
        self.succ = succ
        self.alpha = alpha
        self.pred = {s: d for d, s in succ.items()}

    @classmethod
    def of(cls, m: RootedMap, root: int = ROOT, offset: int = 0) -> "Rotation":
        succ = {d + offset: s + offset for d, s in enumerate(m.sigma)}
        alpha = {d + offset: (d ^ 1) + offset for d in range(m.n_darts)}
        if m.n_edges == 0:
            succ[root] = root
        else:
            r = m.root_dart + offset
            p = m.sigma_inv[m.root_dart] + offset
            succ[p] = root
            succ[root] = r
        return cls(succ, alpha)

    def set_succ(self, d: int, s: int) -> None:
        self.succ[d] = s
        self.pred[s] = d

    def set_cycle(self, darts: list[int]) -> None:
        for a, b in zip(darts, darts[1:] + darts[:1]):
            self.set_succ(a, b)

    def pair(self, a: int, b: int) -> None:
        self.alpha[a] = b
        self.alpha[b] = a

    def remove(self, *darts: int) -> None:
        for d in darts:
            self.succ.pop(d, None)
            self.pred.pop(d, None)
            self.alpha.pop(d, None)

    def walk(self, start: int, stop: int) -> list[int]:
        """Darts from ``start`` (included) to ``stop`` (excluded) along succ."""
        out = []
        d = start
        while d != stop:
            out.append(d)
            d = self.succ[d]
            if len(out) > len(self.succ):
                raise InternalInconsistency("walk did not reach its stop dart")
        return out

    def cycle(self, start: int) -> list[int]:
        out = [start]
        d = self.succ[start]
        while d != start:
            out.append(d)
            d = self.succ[d]
        return out

    def component(self, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            d = stack.pop()
            nxt = [self.succ[d]]
            if d in self.alpha:
                nxt.append(self.alpha[d])
            for e in nxt:
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return seen

    def build(self, root: int = ROOT, expect: Optional[Iterable[int]] = None) -> tuple[RootedMap, dict[int, int]]:
        """Close the component of virtual dart ``root`` into a RootedMap.

        Returns the map and a relabelling of the component's darts; the
        virtual dart is sent to the arrow index ``2n`` of the new map.
        """
        comp = self.component(root)
        if expect is not None and set(expect) != comp:
            raise Disconnected("surgery produced an unexpected component")
        if any(d < 0 and d != root for d in comp):
            raise InternalInconsistency("two root arrows ended in one component")
        r = self.succ[root]
        if r == root:
            if len(comp) != 1:
                raise InternalInconsistency("isolated root with darts attached")
            return VERTEX_MAP, {root: 0}
        p = self.pred[root]
        succ = {d: self.succ[d] for d in comp if d != root}
        succ[p] = r
        lab = relabel_from_root(succ, self.alpha, r)
        if len(lab) != len(comp) - 1:
            raise Disconnected("component is not connected through real darts")
        n = len(lab) // 2
        sigma = [0] * (2 * n)
        for d, s in succ.items():
            sigma[lab[d]] = lab[s]
        lab[root] = 2 * n
        return RootedMap(n, tuple(sigma), 0), lab
