"""Cut-and-slide, leaf retraction, edge contraction and the generalized Remy map.

Every forward operation has an exact inverse.  All surgery goes through
:class:`~rootedmaps.surgery.Rotation`, where the root arrow is a virtual dart
so that corner bookkeeping around the root needs no special cases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    BadMark,
    InternalInconsistency,
    MapError,
    Mark,
    MarkKind,
    RootedMap,
    classify_family,
)
from .exploration import (
    ExplorationData,
    GenusNotZero,
    explore,
    is_disconnecting,
    previous_discovery,
    tour,
)
from .surgery import ROOT, Rotation

ROOT2 = -2


class NotDisconnecting(MapError):
    pass


class LeafNotInOuterFace(MapError):
    pass


class MarkNotLeaf(MapError):
    pass


class MarkIsLeaf(MapError):
    pass


class NotPrecubic(MapError):
    pass


class DegenerateNeighbor(MapError):
    pass


class LastSonPrecedes(MapError):
    pass


@dataclass(frozen=True)
class CutSlideResult:
    m1: RootedMap
    vertex: Mark
    m2: RootedMap
    leaf: Mark
    # darts of m2 on the edges re-closed by the slide, in creation order
    created: tuple[int, ...] = field(default=(), compare=False)

    @property
    def n_edges(self) -> int:
        return self.m1.n_edges + self.m2.n_edges

    @property
    def n_faces(self) -> int:
        return self.m1.num_faces + self.m2.num_faces


@dataclass(frozen=True)
class RemyResult:
    case: str  # leaf_retraction | node_contraction | pair
    map: Optional[RootedMap] = None
    corner: Optional[Mark] = None
    m1: Optional[RootedMap] = None
    vertex1: Optional[Mark] = None
    m2: Optional[RootedMap] = None
    vertex2: Optional[Mark] = None

    @property
    def is_pair(self) -> bool:
        return self.case == "pair"


def _vertex_of_mark(m: RootedMap, mark: Mark) -> int:
    if mark.kind not in (MarkKind.VERTEX, MarkKind.LEAF):
        raise BadMark(f"expected a vertex mark, got {mark.kind.value}")
    if m.n_edges == 0:
        return 0
    if mark.value is None:
        raise BadMark("vertex mark without a dart")
    return m.vertex_of[mark.value]


def _corner_dart(m: RootedMap, mark: Mark) -> int:
    """Dart whose preceding corner is marked, ROOT for the arrow half."""
    if mark.kind != MarkKind.CORNER:
        raise BadMark(f"expected a corner mark, got {mark.kind.value}")
    if m.n_edges == 0 or mark.value is None or mark.value == m.arrow:
        return ROOT
    return mark.value


def _vertex_mark(m: RootedMap, lab: dict[int, int], darts) -> Mark:
    """Vertex mark on the new map for a vertex given by old darts."""
    if m.n_edges == 0:
        return Mark.vertex(None)
    real = [lab[d] for d in darts if d >= 0]
    if not real:
        # only the arrow is left on this vertex: it is the root vertex
        return Mark.vertex(min(m.vertices[m.root_vertex]))
    return Mark.vertex(min(m.vertices[m.vertex_of[real[0]]]))


def _corner_mark(m: RootedMap, lab: dict[int, int], dart: int) -> Mark:
    if m.n_edges == 0:
        return Mark.corner(None)
    return Mark.corner(lab[dart])


# -- splitting and cut-and-slide ----------------------------------------------


def _cut(m: RootedMap, expl: ExplorationData, chain: list[int]) -> CutSlideResult:
    """Open the discoveries ``chain[:-1]``, split at ``chain[-1]``, then slide.

    ``chain`` holds the discovery darts ``x_0 .. x_k``; ``x_k`` must be
    disconnecting.  The slide re-pairs the opened edges cyclically:
    ``x_i`` with ``alpha(x_{i+1})`` and the split-off leaf with ``alpha(x_0)``.
    """
    rot = Rotation.of(m)
    xk = chain[-1]
    last = expl.vertex_last_corner[m.vertex_of[xk]]
    v1 = rot.walk(last, xk)
    v2 = rot.walk(rot.succ[xk], last)
    if not v2:
        raise InternalInconsistency("split would leave the second root vertex empty")
    rot.set_cycle(v1)
    rot.set_cycle(v2 + [ROOT2])
    rot.set_cycle([xk])
    partners = [x ^ 1 for x in chain]
    for i in range(len(chain) - 1):
        rot.pair(chain[i], partners[i + 1])
    rot.pair(xk, partners[0])
    c1 = rot.component(ROOT)
    c2 = rot.component(ROOT2)
    if c1 & c2 or len(c1) + len(c2) != len(rot.succ):
        raise InternalInconsistency("cut did not separate the map in two")
    m1, lab1 = rot.build(ROOT)
    m2, lab2 = rot.build(ROOT2)
    return CutSlideResult(
        m1,
        _vertex_mark(m1, lab1, v1),
        m2,
        Mark.leaf(lab2[xk]),
        tuple(lab2[x] for x in chain[:-1]),
    )


def split_at_discovery_dart(m: RootedMap, dart: int, expl: Optional[ExplorationData] = None) -> CutSlideResult:
    """Split at the discovery vertex of ``dart`` without checking the map's genus."""
    return _cut(m, expl or tour(m), [dart])


def split_at_disconnecting(m: RootedMap, rank: int, expl: Optional[ExplorationData] = None) -> CutSlideResult:
    expl = expl or explore(m)
    if not is_disconnecting(expl, rank):
        raise NotDisconnecting(f"discovery {rank} is not disconnecting")
    return _cut(m, expl, [expl.discoveries[rank].dart])


def discovery_chain(expl: ExplorationData, rank: int) -> list[int]:
    """Ranks ``rank, previous(rank), ...`` up to the first disconnecting one."""
    chain = [rank]
    while not is_disconnecting(expl, chain[-1]):
        prev = previous_discovery(expl, chain[-1])
        if prev is None:
            raise InternalInconsistency("reached the outer face without a disconnecting discovery")
        chain.append(prev)
    return chain


def cut_and_slide(m: RootedMap, rank: int, expl: Optional[ExplorationData] = None) -> CutSlideResult:
    """Send a planar map with a marked discovery to (map + vertex, map + leaf)."""
    expl = expl or explore(m)
    chain = discovery_chain(expl, rank)
    return _cut(m, expl, [expl.discoveries[r].dart for r in chain])


def closure_chain_ok(cs: CutSlideResult) -> bool:
    """Edges re-closed by the slide are discoveries of m2 chaining to its outer face.

    The first one enters the face holding the marked leaf and each one's
    previous discovery is the next; the last leaves the outer face.
    """
    m2 = cs.m2
    expl = tour(m2)
    ranks = [expl.rank_of_edge(d) for d in cs.created]
    for r, d in zip(ranks, cs.created):
        if r is None or expl.discoveries[r].dart != d:
            return False
    leaf_face = m2.face_of[cs.leaf.value]
    if not ranks:
        return leaf_face == m2.root_face
    if expl.entering.get(leaf_face) != ranks[0]:
        return False
    for a, b in zip(ranks, ranks[1:]):
        if previous_discovery(expl, a) != b:
            return False
    return previous_discovery(expl, ranks[-1]) is None


def _glue(m1: RootedMap, vertex: Mark, rot2: Rotation, lam: int) -> Rotation:
    """Put leaf dart ``lam`` in front of the second root, then the block into m1.

    ``rot2`` holds the second map with shifted darts and its arrow as ROOT2.
    The block is inserted just before the last corner of the marked vertex.
    """
    rot1 = Rotation.of(m1)
    u = _vertex_of_mark(m1, vertex)
    last1 = tour(m1).vertex_last_corner[u]
    block = [lam] + rot2.walk(rot2.succ[ROOT2], ROOT2)
    rot2.remove(ROOT2)
    rot = Rotation({**rot1.succ, **rot2.succ}, {**rot1.alpha, **rot2.alpha})
    before = rot.pred[last1]
    chain = [before] + block + [last1]
    for a, b in zip(chain, chain[1:]):
        rot.set_succ(a, b)
    return rot


def _leaf_dart(m: RootedMap, leaf: Mark) -> int:
    if leaf.kind not in (MarkKind.LEAF, MarkKind.VERTEX) or leaf.value is None:
        raise MarkNotLeaf("expected a leaf mark")
    v = m.vertex_of[leaf.value]
    if not m.is_leaf(v):
        raise MarkNotLeaf(f"dart {leaf.value} is not on a leaf")
    return m.vertices[v][0]


def _inverse(m1: RootedMap, vertex: Mark, m2: RootedMap, leaf: Mark, require_outer: bool) -> tuple[RootedMap, int]:
    lam_local = _leaf_dart(m2, leaf)
    expl2 = tour(m2)
    face = m2.face_of[lam_local]
    chain: list[int] = []
    if face != m2.root_face:
        if require_outer:
            raise LeafNotInOuterFace("marked leaf is not in the outer face")
        r = expl2.entering[face]
        while r is not None:
            chain.append(r)
            r = previous_discovery(expl2, r)
    off = m1.n_darts
    rot2 = Rotation.of(m2, root=ROOT2, offset=off)
    lam = lam_local + off
    mu = rot2.alpha[lam]
    z = [expl2.discoveries[r].dart + off for r in chain]
    if z:
        t = [rot2.alpha[d] for d in z]
        rot2.pair(z[0], mu)
        for i in range(1, len(z)):
            rot2.pair(z[i], t[i - 1])
        rot2.pair(lam, t[-1])
    rot = _glue(m1, vertex, rot2, lam)
    m, lab = rot.build(ROOT)
    expl = tour(m)
    rank = expl.rank_of_edge(lab[mu])
    if rank is None:
        raise InternalInconsistency("re-glued edge is not a discovery")
    return m, rank


def unsplit(m1: RootedMap, vertex: Mark, m2: RootedMap, leaf: Mark) -> tuple[RootedMap, int]:
    """Inverse of :func:`split_at_disconnecting` (leaf must be in the outer face)."""
    return _inverse(m1, vertex, m2, leaf, require_outer=True)


def cut_and_slide_inverse(m1: RootedMap, vertex: Mark, m2: RootedMap, leaf: Mark) -> tuple[RootedMap, int]:
    if m1.genus or m2.genus:
        raise GenusNotZero("cut-and-slide inverse needs planar maps")
    return _inverse(m1, vertex, m2, leaf, require_outer=False)


# -- leaves ------------------------------------------------------------------


def leaf_retract(m: RootedMap, leaf: Mark) -> tuple[RootedMap, Mark]:
    """Remove a leaf and mark the corner it was attached in."""
    lam = _leaf_dart(m, leaf)
    mu = lam ^ 1
    rot = Rotation.of(m)
    nxt = rot.succ[mu]
    rot.set_succ(rot.pred[mu], nxt)
    rot.remove(lam, mu)
    out, lab = rot.build(ROOT)
    return out, _corner_mark(out, lab, nxt)


def leaf_expand(m: RootedMap, corner: Mark) -> tuple[RootedMap, Mark]:
    """Grow a new leaf in the marked corner."""
    c = _corner_dart(m, corner)
    rot = Rotation.of(m)
    mu, lam = m.n_darts, m.n_darts + 1
    rot.set_succ(rot.pred[c], mu)
    rot.set_succ(mu, c)
    rot.set_succ(lam, lam)
    rot.pair(mu, lam)
    out, lab = rot.build(ROOT)
    return out, Mark.leaf(lab[lam])


def precubic_leaf_retract(m: RootedMap, leaf: Mark) -> tuple[RootedMap, Mark]:
    """Remove a leaf and smooth its degree-3 neighbour into one marked side-edge."""
    if not classify_family(m).is_precubic:
        raise NotPrecubic("map is not precubic")
    lam = _leaf_dart(m, leaf)
    mu = lam ^ 1
    if m.degree(m.vertex_of[mu]) != 3:
        raise DegenerateNeighbor("neighbour of the leaf does not have degree 3")
    a = m.sigma[mu]
    b = m.sigma[a]
    if a ^ 1 == b:
        raise DegenerateNeighbor("neighbour carries a loop")
    p, q = a ^ 1, b ^ 1
    rot = Rotation.of(m)
    rot.remove(lam, mu, a, b)
    rot.pair(p, q)
    out, lab = rot.build(ROOT)
    return out, Mark.side_edge(lab[q])


def precubic_leaf_expand(m: RootedMap, side: Mark) -> tuple[RootedMap, Mark]:
    """Subdivide the marked side-edge and hang a leaf on the marked side."""
    if side.kind != MarkKind.SIDE_EDGE or side.value is None:
        raise BadMark("expected a side-edge mark")
    q = side.value
    p = q ^ 1
    n = m.n_darts
    mu, lam, a, b = n, n + 1, n + 2, n + 3
    rot = Rotation.of(m)
    rot.set_cycle([mu, a, b])
    rot.set_succ(lam, lam)
    rot.pair(mu, lam)
    rot.pair(a, p)
    rot.pair(b, q)
    out, lab = rot.build(ROOT)
    return out, Mark.leaf(lab[lam])


# -- contraction / growing -----------------------------------------------------


def last_edge(m: RootedMap, vertex: int, expl: ExplorationData) -> int:
    """Dart of ``vertex`` just before its last corner in clockwise order."""
    rot = Rotation.of(m)
    return rot.pred[expl.vertex_last_corner[vertex]]


def contract_last_edge(m: RootedMap, vertex: Mark, expl: Optional[ExplorationData] = None) -> tuple[RootedMap, Mark]:
    expl = expl or tour(m)
    v = _vertex_of_mark(m, vertex)
    if m.n_edges == 0:
        raise MarkIsLeaf("the vertex map has no edge to contract")
    if m.is_leaf(v):
        raise MarkIsLeaf("marked vertex is a leaf")
    rot = Rotation.of(m)
    last = expl.vertex_last_corner[v]
    eps = rot.pred[last]
    eps1 = eps ^ 1
    w = m.vertex_of[eps1]
    if w == v or expl.first_label(w) < expl.first_label(v):
        raise LastSonPrecedes("last son is seen before the marked vertex")
    v_part = rot.walk(last, eps)
    w_part = rot.walk(rot.succ[eps1], eps1)
    rot.remove(eps, eps1)
    rot.set_cycle(v_part + w_part)
    marked = w_part[0] if w_part else last
    out, lab = rot.build(ROOT)
    return out, _corner_mark(out, lab, marked)


def grow_edge(m: RootedMap, corner: Mark) -> tuple[RootedMap, Mark]:
    """Inverse of :func:`contract_last_edge`."""
    c = _corner_dart(m, corner)
    expl = tour(m)
    rot = Rotation.of(m)
    vstar = m.root_vertex if c == ROOT else m.vertex_of[c]
    last = expl.vertex_last_corner[vstar]
    if c == last:
        v_part = rot.cycle(last)
        w_part: list[int] = []
    else:
        v_part = rot.walk(last, c)
        w_part = rot.walk(c, last)
    eps, eps1 = m.n_darts, m.n_darts + 1
    rot.set_cycle([eps] + v_part)
    rot.set_cycle([eps1] + w_part)
    rot.pair(eps, eps1)
    out, lab = rot.build(ROOT)
    return out, Mark.vertex(min(out.vertices[out.vertex_of[lab[eps]]]))


# -- generalized Remy bijection ------------------------------------------------


def _contract_leaf_to_vertex(m: RootedMap, leaf: Mark) -> tuple[RootedMap, Mark]:
    lam = _leaf_dart(m, leaf)
    mu = lam ^ 1
    expl = tour(m)
    w = m.vertex_of[mu]
    rot = Rotation.of(m)
    if rot.pred[expl.vertex_last_corner[w]] != mu:
        raise InternalInconsistency("marked leaf is not the last son of its neighbour")
    rest = [d for d in rot.cycle(mu) if d != mu]
    rot.remove(lam, mu)
    rot.set_cycle(rest)
    out, lab = rot.build(ROOT)
    return out, _vertex_mark(out, lab, rest)


def _grow_leaf_at_last_corner(m: RootedMap, vertex: Mark) -> tuple[RootedMap, Mark]:
    w = _vertex_of_mark(m, vertex)
    last = tour(m).vertex_last_corner[w]
    return leaf_expand(m, Mark.corner(m.arrow if last == ROOT else last))


def remy_forward(m: RootedMap, vertex: Mark) -> RemyResult:
    """Generalized Remy map on a planar map with a marked non-leaf vertex."""
    expl = explore(m)
    v = _vertex_of_mark(m, vertex)
    if m.n_edges == 0:
        raise MarkIsLeaf("the vertex map has no edge")
    if m.is_leaf(v):
        raise MarkIsLeaf("marked vertex is a leaf")
    eps = last_edge(m, v, expl)
    w = m.vertex_of[eps ^ 1]
    if w != v and expl.first_label(w) > expl.first_label(v):
        out, corner = contract_last_edge(m, vertex, expl)
        return RemyResult("node_contraction", map=out, corner=corner)
    rank = expl.rank_of_edge(eps)
    if rank is None:
        raise InternalInconsistency("last edge of a late vertex is not a discovery")
    cs = cut_and_slide(m, rank, expl)
    m2, vertex2 = _contract_leaf_to_vertex(cs.m2, cs.leaf)
    return RemyResult("pair", m1=cs.m1, vertex1=cs.vertex, m2=m2, vertex2=vertex2)


def remy_bijection(m: RootedMap, vertex: Mark) -> RemyResult:
    """Remy map extended to every vertex: leaves are retracted into a corner."""
    v = _vertex_of_mark(m, vertex)
    if m.n_edges and m.is_leaf(v):
        out, corner = leaf_retract(m, Mark.leaf(m.vertices[v][0]))
        return RemyResult("leaf_retraction", map=out, corner=corner)
    return remy_forward(m, vertex)


def remy_inverse(result: RemyResult) -> tuple[RootedMap, Mark]:
    if result.case == "leaf_retraction":
        m, leaf = leaf_expand(result.map, result.corner)
        return m, Mark.vertex(leaf.value)
    if result.case == "node_contraction":
        return grow_edge(result.map, result.corner)
    m2, leaf = _grow_leaf_at_last_corner(result.m2, result.vertex2)
    m, rank = cut_and_slide_inverse(result.m1, result.vertex1, m2, leaf)
    d = tour(m).discoveries[rank].dart
    v = m.vertex_of[d ^ 1]
    return m, Mark.vertex(min(m.vertices[v]))
