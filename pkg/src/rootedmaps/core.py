"""Rooted combinatorial maps stored as rotation systems.

A map with ``n`` edges has darts ``0 .. 2n-1``.  The edge involution is fixed
as ``alpha(d) = d ^ 1``, so only the vertex rotation ``sigma`` (clockwise
successor of a dart around its vertex) is stored.  Faces are the orbits of
``phi(d) = sigma(alpha(d))``.

The root is the corner immediately preceding ``root_dart``.  The arrow placed
in that corner splits it in two; the half before the arrow (the last corner
seen by a tour starting at the root) is addressed by the sentinel index
``2n``, one past the last dart.  The vertex map (``n = 0``) has no darts, one
vertex, one face and an implicit root corner.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Sequence


class MapError(ValueError):
    """Base class for invalid map data."""


class NotAPermutation(MapError):
    pass


class Disconnected(MapError):
    pass


class BadRoot(MapError):
    pass


class BadMark(MapError):
    pass


class InternalInconsistency(RuntimeError):
    """Raised when derived data contradicts a map invariant."""


class MarkKind(str, Enum):
    DISCOVERY = "discovery"
    VERTEX = "vertex"
    LEAF = "leaf"
    CORNER = "corner"
    SIDE_EDGE = "side-edge"


@dataclass(frozen=True)
class Mark:
    """A typed marker on a map.

    ``value`` is a discovery rank for ``DISCOVERY`` and a dart otherwise.  A
    ``VERTEX`` or ``LEAF`` mark may use any dart of the vertex.  A ``CORNER``
    mark names the corner preceding the dart; the value ``2n`` names the half
    of the root corner lying before the arrow.  ``None`` is reserved for the
    unique vertex/corner of the vertex map.
    """

    kind: MarkKind
    value: Optional[int]

    @classmethod
    def discovery(cls, rank: int) -> "Mark":
        return cls(MarkKind.DISCOVERY, rank)

    @classmethod
    def vertex(cls, dart: Optional[int]) -> "Mark":
        return cls(MarkKind.VERTEX, dart)

    @classmethod
    def leaf(cls, dart: int) -> "Mark":
        return cls(MarkKind.LEAF, dart)

    @classmethod
    def corner(cls, dart: Optional[int]) -> "Mark":
        return cls(MarkKind.CORNER, dart)

    @classmethod
    def side_edge(cls, dart: int) -> "Mark":
        return cls(MarkKind.SIDE_EDGE, dart)


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class RootedMap:
    n_edges: int
    sigma: tuple[int, ...]
    root_dart: Optional[int]

    # -- basic structure ---------------------------------------------------

    @property
    def n_darts(self) -> int:
        return 2 * self.n_edges

    @property
    def arrow(self) -> int:
        """Index of the root corner half that lies before the arrow."""
        return 2 * self.n_edges

    @staticmethod
    def alpha(d: int) -> int:
        return d ^ 1

    def phi(self, d: int) -> int:
        return self.sigma[d ^ 1]

    @cached_property
    def sigma_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n_darts
        for d, s in enumerate(self.sigma):
            inv[s] = d
        return tuple(inv)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        """Sigma-cycles, each starting at its minimal dart, ordered by it."""
        if self.n_edges == 0:
            return [()]
        return _cycles(self.sigma)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for i, cyc in enumerate(self.vertices):
            for d in cyc:
                out[d] = i
        return tuple(out)

    @cached_property
    def faces(self) -> list[tuple[int, ...]]:
        if self.n_edges == 0:
            return [()]
        return _cycles([self.sigma[d ^ 1] for d in range(self.n_darts)])

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for i, cyc in enumerate(self.faces):
            for d in cyc:
                out[d] = i
        return tuple(out)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @cached_property
    def genus(self) -> int:
        twice = 2 - self.num_vertices + self.n_edges - self.num_faces
        if twice % 2 or twice < 0:
            raise InternalInconsistency(f"Euler characteristic gives 2g = {twice}")
        return twice // 2

    @property
    def root_vertex(self) -> int:
        return 0 if self.n_edges == 0 else self.vertex_of[self.root_dart]

    @property
    def root_face(self) -> int:
        return 0 if self.n_edges == 0 else self.face_of[self.root_dart]

    def degree(self, vertex: int) -> int:
        return len(self.vertices[vertex])

    def is_leaf(self, vertex: int) -> bool:
        return self.degree(vertex) == 1 and vertex != self.root_vertex

    def leaves(self) -> list[int]:
        return [i for i in range(self.num_vertices) if self.is_leaf(i)]

    def corner_face(self, dart: int) -> int:
        """Face containing the corner preceding ``dart`` (or the arrow half)."""
        if dart == self.arrow or dart < 0:
            return self.root_face
        return self.face_of[dart]

    def __str__(self) -> str:
        return f"RootedMap(n={self.n_edges}, sigma={list(self.sigma)}, root={self.root_dart})"


VERTEX_MAP = RootedMap(0, (), None)


def build_map(n_edges: int, sigma: Iterable[int], root_dart: Optional[int]) -> RootedMap:
    """Validate rotation data and return a :class:`RootedMap`."""
    sigma = tuple(int(s) for s in sigma)
    if n_edges < 0:
        raise MapError("negative edge count")
    if len(sigma) != 2 * n_edges:
        raise NotAPermutation(f"sigma has length {len(sigma)}, expected {2 * n_edges}")
    if sorted(sigma) != list(range(2 * n_edges)):
        raise NotAPermutation("sigma is not a permutation of the darts")
    if n_edges == 0:
        if root_dart is not None:
            raise BadRoot("the vertex map has no root dart")
        return VERTEX_MAP
    if root_dart is None or not 0 <= root_dart < 2 * n_edges:
        raise BadRoot(f"root dart {root_dart!r} out of range")
    m = RootedMap(n_edges, sigma, root_dart)
    if not is_connected(m):
        raise Disconnected("sigma and alpha do not act transitively on darts")
    m.genus  # noqa: B018 - forces the Euler check
    return m


def is_connected(m: RootedMap) -> bool:
    if m.n_edges == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (m.sigma[d], d ^ 1):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return len(seen) == m.n_darts


# -- derived data ----------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    """Multiplicities ``degree -> number of vertices`` (root included)."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> "DegreeProfile":
        return cls(tuple(sorted((d, c) for d, c in counts.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __getitem__(self, degree: int) -> int:
        return self.as_dict().get(degree, 0)

    @property
    def num_vertices(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def num_edges(self) -> int:
        twice = sum(d * c for d, c in self.counts)
        return twice // 2

    def key(self) -> str:
        return ",".join(f"{d}:{c}" for d, c in self.counts)


def faces(m: RootedMap) -> list[tuple[int, ...]]:
    return list(m.faces)


def genus(m: RootedMap) -> int:
    return m.genus


def degree_profile(m: RootedMap) -> tuple[DegreeProfile, int]:
    """Return the degree profile and the root degree."""
    counts = Counter(len(c) for c in m.vertices)
    return DegreeProfile.from_counts(counts), m.degree(m.root_vertex)


@dataclass(frozen=True)
class FamilyFlags:
    is_precubic: bool
    is_cubic: bool
    is_unicellular: bool


def classify_family(m: RootedMap) -> FamilyFlags:
    degrees = [len(c) for c in m.vertices]
    precubic = (
        m.n_edges > 0
        and all(d in (1, 3) for d in degrees)
        and m.degree(m.root_vertex) == 1
    )
    cubic = m.n_edges > 0 and all(d == 3 for d in degrees)
    return FamilyFlags(precubic, cubic, m.num_faces == 1)


def dual(m: RootedMap) -> RootedMap:
    """Exchange vertices and faces.

    The dual rotation is the face permutation ``sigma o alpha`` and the root
    dart is kept, so ``dual`` is an involution on labelled maps.
    """
    if m.n_edges == 0:
        return m
    return RootedMap(m.n_edges, tuple(m.sigma[d ^ 1] for d in range(m.n_darts)), m.root_dart)


# -- canonical labelling -----------------------------------------------------


def relabel_from_root(succ, alpha, root: int) -> dict[int, int]:
    """Number darts in first-visit order from ``root``.

    Each newly reached dart gets the next even label and its partner the odd
    label after it, so the result is compatible with ``alpha = d ^ 1``.
    ``succ`` and ``alpha`` are any mappings over the same set of darts.
    """
    label = {root: 0, alpha[root]: 1}
    order = [root, alpha[root]]
    i = 0
    while i < len(order):
        s = succ[order[i]]
        if s not in label:
            label[s] = len(order)
            order.append(s)
            a = alpha[s]
            label[a] = len(order)
            order.append(a)
        i += 1
    return label


def canonical_relabel(m: RootedMap) -> dict[int, int]:
    if m.n_edges == 0:
        return {}
    return relabel_from_root(m.sigma, _XorAlpha, m.root_dart)


class _XorAlphaType:
    def __getitem__(self, d: int) -> int:
        return d ^ 1


_XorAlpha = _XorAlphaType()


def canonical_form(m: RootedMap) -> RootedMap:
    if m.n_edges == 0:
        return m
    lab = canonical_relabel(m)
    sigma = [0] * m.n_darts
    for d, s in enumerate(m.sigma):
        sigma[lab[d]] = lab[s]
    return RootedMap(m.n_edges, tuple(sigma), 0)


def sigma_code(n_edges: int, sigma: Sequence[int]) -> bytes:
    return n_edges.to_bytes(4, "big") + b"".join(s.to_bytes(2, "big") for s in sigma)


def canonical_code(m: RootedMap) -> bytes:
    """Byte string equal for two maps iff they are isomorphic as rooted maps."""
    c = canonical_form(m)
    return sigma_code(c.n_edges, c.sigma)


def normalize_mark(m: RootedMap, mark: Mark) -> Mark:
    """Pick a representative dart for vertex-like marks (minimal dart)."""
    if mark.kind in (MarkKind.VERTEX, MarkKind.LEAF):
        if m.n_edges == 0 or mark.value is None:
            return Mark(mark.kind, None)
        return Mark(mark.kind, min(m.vertices[m.vertex_of[mark.value]]))
    if mark.kind == MarkKind.CORNER and m.n_edges == 0:
        return Mark(mark.kind, None)
    return mark


def canonical_key(m: RootedMap, *marks: Mark) -> tuple:
    """Isomorphism invariant of a map carrying marks."""
    c = canonical_form(m)
    lab = canonical_relabel(m)
    out = []
    for mk in marks:
        v = mk.value
        if mk.kind != MarkKind.DISCOVERY and v is not None and m.n_edges:
            v = lab.get(v, v)  # the arrow index 2n is invariant
        out.append(normalize_mark(c, Mark(mk.kind, v)))
    return (sigma_code(c.n_edges, c.sigma), tuple((mk.kind.value, mk.value) for mk in out))


def validate_mark(m: RootedMap, mark: Mark, n_discoveries: Optional[int] = None) -> None:
    v = mark.value
    if mark.kind == MarkKind.DISCOVERY:
        limit = m.num_faces - 1 if n_discoveries is None else n_discoveries
        if v is None or not 0 <= v < limit:
            raise BadMark(f"discovery rank {v!r} out of range (f-1 = {limit})")
        return
    if m.n_edges == 0:
        if v is not None and not (mark.kind == MarkKind.CORNER and v == 0):
            raise BadMark("marks on the vertex map must be '-'")
        if mark.kind in (MarkKind.LEAF, MarkKind.SIDE_EDGE):
            raise BadMark(f"the vertex map has no {mark.kind.value}")
        return
    top = m.n_darts + (1 if mark.kind == MarkKind.CORNER else 0)
    if v is None or not 0 <= v < top:
        raise BadMark(f"{mark.kind.value} value {v!r} out of range")
    if mark.kind == MarkKind.LEAF and not m.is_leaf(m.vertex_of[v]):
        raise BadMark(f"dart {v} is not on a leaf")
