"""Two-faced precubic maps of any genus: trisections, special vertices, tripods.

The corner labelling is the tour of :func:`rootedmaps.exploration.tour`:
with two faces it opens the single discovery and then walks the resulting
one-faced blossoming map, which is exactly the labelling wanted here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .bijections import NotPrecubic, split_at_discovery_dart, unsplit
from .core import InternalInconsistency, MapError, Mark, RootedMap, classify_family
from .enumerate import EnumFilter, enumerate_maps
from .exploration import ExplorationData, tour
from .surgery import ROOT, Rotation


class NotTwoFaced(MapError):
    pass


class NotSpecial(MapError):
    pass


class NoLabeling(MapError):
    pass


class DecompositionUnavailable(MapError):
    pass


@dataclass(frozen=True)
class TwoFaceExploration:
    map: RootedMap
    corner_label: tuple[int, ...]
    discovery_dart: int
    discovery_vertex: int

    def vertex_labels(self, vertex: int) -> tuple[int, ...]:
        """Labels of the vertex's corners in clockwise order, smallest first."""
        cyc = self.map.vertices[vertex]
        labels = [self.corner_label[d] for d in cyc]
        i = labels.index(min(labels))
        return tuple(labels[i:] + labels[:i])


def explore_two_faced(m: RootedMap) -> TwoFaceExploration:
    if not classify_family(m).is_precubic:
        raise NotPrecubic("map is not precubic")
    if m.num_faces != 2:
        raise NotTwoFaced(f"map has {m.num_faces} faces")
    expl = tour(m)
    (disc,) = expl.discoveries
    return TwoFaceExploration(m, expl.corner_label, disc.dart, disc.vertex)


def _labels(m: RootedMap) -> tuple[int, ...]:
    if m.num_faces not in (1, 2):
        raise NoLabeling(f"no canonical corner labelling with {m.num_faces} faces")
    return tour(m).corner_label


def trisection_corners(m: RootedMap, labels: Optional[tuple[int, ...]] = None) -> list[int]:
    """Corners where the labels step down clockwise, one per vertex excepted.

    Every vertex of degree at least 2 has one such descent closing its
    cycle of labels (at its largest label); the remaining ones are the
    trisections.  A degree-3 vertex has a trisection exactly when its labels
    run counterclockwise.  Corners are named by the dart they precede.
    """
    labels = labels if labels is not None else _labels(m)
    out = []
    for cyc in m.vertices:
        if len(cyc) < 2:
            continue
        top = max(cyc, key=labels.__getitem__)
        for d in cyc:
            if d != top and labels[m.sigma[d]] < labels[d]:
                out.append(d)
    return sorted(out)


def find_trisections(m: RootedMap, labels: Optional[tuple[int, ...]] = None) -> list[int]:
    """Vertices carrying trisections, repeated once per trisection corner."""
    return sorted(m.vertex_of[d] for d in trisection_corners(m, labels))


def special_vertices(m: RootedMap, tfe: Optional[TwoFaceExploration] = None) -> list[int]:
    tfe = tfe or explore_two_faced(m)
    tris = set(find_trisections(m, tfe.corner_label))
    return sorted(tris | {tfe.discovery_vertex})


# -- split and glue ------------------------------------------------------------


@dataclass(frozen=True)
class PairSplit:
    m1: RootedMap
    leaf1: Mark
    m2: RootedMap
    leaf2: Mark


@dataclass(frozen=True)
class Tripod:
    map: RootedMap
    leaves: tuple[int, int, int]  # leaf darts, increasing

    def __post_init__(self):
        if len(set(self.leaves)) != 3 or list(self.leaves) != sorted(self.leaves):
            raise ValueError("a tripod needs three distinct leaf darts in increasing order")
        for d in self.leaves:
            if not self.map.is_leaf(self.map.vertex_of[d]):
                raise ValueError(f"dart {d} is not on a leaf")


@dataclass(frozen=True)
class TripodSplit:
    tripod: Tripod
    gluing: int  # which of the two gluings restores the split vertex


def _gluing_order(leaves: tuple[int, int, int], gluing: int) -> list[int]:
    a, b, c = leaves
    return [a, b, c] if gluing == 0 else [a, c, b]


def split_at_special(m: RootedMap, vertex: int, tfe: Optional[TwoFaceExploration] = None) -> Union[PairSplit, TripodSplit]:
    """Cut a special vertex into three leaves."""
    tfe = tfe or explore_two_faced(m)
    if vertex not in special_vertices(m, tfe):
        raise NotSpecial(f"vertex {vertex} is not special")
    cyc = m.vertices[vertex]
    rot = Rotation.of(m)
    for d in cyc:
        rot.set_succ(d, d)
    if len(rot.component(ROOT)) != len(rot.succ):
        if vertex != tfe.discovery_vertex:
            raise InternalInconsistency("a trisection split disconnected the map")
        cs = split_at_discovery_dart(m, tfe.discovery_dart)
        return PairSplit(cs.m1, Mark.leaf(cs.vertex.value), cs.m2, cs.leaf)
    out, lab = rot.build(ROOT)
    leaves = tuple(sorted(lab[d] for d in cyc))
    order = [lab[d] for d in cyc]
    i = order.index(leaves[0])
    order = order[i:] + order[:i]
    gluing = 0 if order == _gluing_order(leaves, 0) else 1
    return TripodSplit(Tripod(out, leaves), gluing)


@dataclass(frozen=True)
class Gluing:
    map: RootedMap
    vertex: int
    valid: bool


def glue_tripod(tripod: Tripod, gluing: int) -> Gluing:
    """Merge the three leaves into one vertex, in one of the two cyclic orders."""
    if gluing not in (0, 1):
        raise ValueError("gluing must be 0 or 1")
    rot = Rotation.of(tripod.map)
    rot.set_cycle(_gluing_order(tripod.leaves, gluing))
    out, lab = rot.build(ROOT)
    v = out.vertex_of[lab[tripod.leaves[0]]]
    valid = out.num_faces == 2 and out.genus == tripod.map.genus + 1 and v in special_vertices(out)
    return Gluing(out, v, valid)


def glue_pair(split: PairSplit) -> tuple[RootedMap, int]:
    """Inverse of the disconnecting split; returns the map and the glued vertex."""
    m, rank = unsplit(split.m1, Mark.vertex(split.leaf1.value), split.m2, split.leaf2)
    return m, tour(m).discoveries[rank].vertex


# -- tripod classification ---------------------------------------------------------


@dataclass(frozen=True)
class TripodClass:
    label: str  # same-face | special-case | two-in-O | one-in-root | zero
    valid_gluings: int
    regions: tuple[str, ...]  # per leaf: T, O, Tbar or inner


def root_face_decomposition(m: RootedMap, expl: Optional[ExplorationData] = None) -> tuple[list[int], int, int]:
    """Root face as a dart word from the root and the two positions of the discovery vertex."""
    expl = expl or tour(m)
    if m.num_faces != 2 or len(expl.discoveries) != 1:
        raise DecompositionUnavailable("needs a map with exactly two faces")
    word = list(m.faces[m.root_face])
    i = word.index(m.root_dart)
    word = word[i:] + word[:i]
    dv = expl.discoveries[0].vertex
    pos = [k for k, d in enumerate(word) if m.vertex_of[d] == dv]
    if len(pos) != 2:
        raise DecompositionUnavailable(f"discovery vertex meets the root face {len(pos)} times")
    return word, pos[0], pos[1]


def _is_special_case(m: RootedMap, word: list[int], first: int, a: int, b: int) -> bool:
    succ = list(m.sigma)
    succ[a], succ[b] = b, a
    face_of_new = {}
    seen = set()
    for start in range(m.n_darts):
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = succ[d ^ 1]
        for d in face:
            face_of_new[d] = tuple(face)
    root_face = face_of_new[m.root_dart]
    others = {face_of_new[a], face_of_new[b]} - {root_face}
    if not others:
        return False
    (inner,) = others
    t_part = set(word[:first])
    return not any(d ^ 1 in t_part for d in inner)


def classify_tripod(tripod: Tripod) -> TripodClass:
    m = tripod.map
    word, first, second = root_face_decomposition(m)
    where = {d: k for k, d in enumerate(word)}
    regions = []
    for leaf in tripod.leaves:
        k = where.get(leaf)
        if k is None:
            regions.append("inner")
        elif k < first:
            regions.append("T")
        elif k < second:
            regions.append("O")
        else:
            regions.append("Tbar")
    outer = [leaf for leaf, r in zip(tripod.leaves, regions) if r != "inner"]
    if len(outer) in (0, 3):
        return TripodClass("same-face", 1, tuple(regions))
    if len(outer) == 1:
        return TripodClass("one-in-root", 2, tuple(regions))
    outer_regions = [r for r in regions if r != "inner"]
    if outer_regions == ["O", "O"]:
        return TripodClass("two-in-O", 1, tuple(regions))
    if outer_regions == ["Tbar", "Tbar"] and _is_special_case(m, word, first, *outer):
        return TripodClass("special-case", 1, tuple(regions))
    return TripodClass("zero", 0, tuple(regions))


def valid_gluings(tripod: Tripod) -> int:
    return sum(glue_tripod(tripod, k).valid for k in (0, 1))


# -- instance generators ------------------------------------------------------------


def two_faced_precubic(n: int, genus: Optional[int] = None, budget=None) -> Iterator[RootedMap]:
    return enumerate_maps(n, EnumFilter(faces=2, genus=genus, family="precubic"), budget)


def tripods(n: int, genus: int, budget=None) -> Iterator[Tripod]:
    """Every two-faced precubic map of the given genus with three of its leaves marked."""
    for m in two_faced_precubic(n, genus, budget):
        leaves = sorted(m.vertices[v][0] for v in m.leaves())
        for trio in itertools.combinations(leaves, 3):
            yield Tripod(m, trio)
