"""Clockwise exploration of a rooted map and the discoveries it produces.

The tour walks the map keeping the edges on its right.  Whenever the face on
the other side of the current side-edge has not been seen yet, the edge is
opened (a discovery) and the tour enters that face.  Opened edges are crossed
instead of followed, which simulates the tour of the opened blossoming map
without building it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import MapError, RootedMap
from .surgery import ROOT


class GenusNotZero(MapError):
    pass


class BadRank(MapError):
    pass


@dataclass(frozen=True)
class Discovery:
    dart: int  # side-edge in the parent face; its origin is the discovery vertex
    vertex: int
    entered_face: int
    left_face: int


@dataclass(frozen=True)
class ExplorationData:
    map: RootedMap
    corner_label: tuple[int, ...]  # dart -> label of the corner preceding it
    discoveries: tuple[Discovery, ...]
    face_parent: dict[int, int]
    vertex_first_corner: dict[int, int]
    vertex_last_corner: dict[int, int]  # ROOT stands for the arrow half of the root corner
    entering: dict[int, int] = field(default_factory=dict)  # face -> rank of discovery entering it

    def label(self, dart: int) -> int:
        """Label of the corner preceding ``dart``; ROOT gives ``2n``."""
        if dart == ROOT:
            return self.map.n_darts
        return self.corner_label[dart]

    def corner_face(self, dart: int) -> int:
        return self.map.root_face if dart == ROOT else self.map.face_of[dart]

    def first_label(self, vertex: int) -> int:
        return self.label(self.vertex_first_corner[vertex])

    def rank_of_edge(self, dart: int) -> Optional[int]:
        edge = dart >> 1
        for i, d in enumerate(self.discoveries):
            if d.dart >> 1 == edge:
                return i
        return None

    def to_json(self) -> dict:
        m = self.map
        return {
            "corner_label": list(self.corner_label),
            "arrow_label": m.n_darts,
            "discoveries": [
                {
                    "rank": i,
                    "dart": d.dart,
                    "vertex": d.vertex,
                    "entered_face": d.entered_face,
                    "left_face": d.left_face,
                }
                for i, d in enumerate(self.discoveries)
            ],
            "root_face": m.root_face,
            "face_parent": {str(k): v for k, v in sorted(self.face_parent.items())},
            "vertex_first_corner": {str(k): v for k, v in sorted(self.vertex_first_corner.items())},
            "vertex_last_corner": {
                str(k): ("arrow" if v == ROOT else v) for k, v in sorted(self.vertex_last_corner.items())
            },
        }


def tour(m: RootedMap) -> ExplorationData:
    """Run the exploration on a map of any genus."""
    if m.n_edges == 0:
        return ExplorationData(m, (), (), {}, {0: ROOT}, {0: ROOT})
    sigma, face_of, vertex_of = m.sigma, m.face_of, m.vertex_of
    root = m.root_dart
    visited = {face_of[root]}
    opened = set()
    labels = [-1] * m.n_darts
    discoveries = []
    parent = {}
    entering = {}
    x = root
    k = 0
    while True:
        labels[x] = k
        k += 1
        edge = x >> 1
        if edge in opened:
            x = sigma[x]
        else:
            across = face_of[x ^ 1]
            if across not in visited:
                visited.add(across)
                opened.add(edge)
                entering[across] = len(discoveries)
                discoveries.append(Discovery(x, vertex_of[x], across, face_of[x]))
                parent[across] = face_of[x]
                x = sigma[x]
            else:
                x = sigma[x ^ 1]
        if x == root:
            break
        if k > m.n_darts:
            raise RuntimeError("exploration did not return to the root")
    if k != m.n_darts:
        raise RuntimeError(f"exploration visited {k} of {m.n_darts} corners")
    first = {}
    last = {}
    for v, cyc in enumerate(m.vertices):
        first[v] = min(cyc, key=labels.__getitem__)
        last[v] = max(cyc, key=labels.__getitem__)
    last[m.root_vertex] = ROOT
    return ExplorationData(m, tuple(labels), tuple(discoveries), parent, first, last, entering)


def explore(m: RootedMap) -> ExplorationData:
    """Exploration of a planar map."""
    if m.genus != 0:
        raise GenusNotZero(f"map has genus {m.genus}")
    return tour(m)


def _check_rank(expl: ExplorationData, rank: int) -> None:
    if not 0 <= rank < len(expl.discoveries):
        raise BadRank(f"rank {rank} out of range 0..{len(expl.discoveries) - 1}")


def previous_discovery(expl: ExplorationData, rank: int) -> Optional[int]:
    _check_rank(expl, rank)
    left = expl.discoveries[rank].left_face
    return expl.entering.get(left)


def is_disconnecting(expl: ExplorationData, rank: int) -> bool:
    _check_rank(expl, rank)
    d = expl.discoveries[rank]
    last = expl.vertex_last_corner[d.vertex]
    return expl.map.face_of[d.dart] == expl.corner_face(last)


def dual_dfs_parents(m: RootedMap) -> dict[int, int]:
    """Right-first depth-first search of the dual, done recursively.

    Independent of :func:`tour`; used to check that the exploration builds the
    same spanning tree of the dual.
    """
    if m.n_edges == 0:
        return {}
    face_of = m.face_of
    parent: dict[int, int] = {}
    visited = {face_of[m.root_dart]}

    def visit(start: int, stop: int) -> None:
        d = start
        while True:
            across = face_of[d ^ 1]
            if across not in visited:
                visited.add(across)
                parent[across] = face_of[d]
                visit(m.phi(d ^ 1), d ^ 1)
            d = m.phi(d)
            if d == stop:
                return

    # the root face is walked once around, from the root dart back to it
    r = m.root_dart
    d = r
    while True:
        across = face_of[d ^ 1]
        if across not in visited:
            visited.add(across)
            parent[across] = face_of[d]
            visit(m.phi(d ^ 1), d ^ 1)
        d = m.phi(d)
        if d == r:
            break
    return parent
