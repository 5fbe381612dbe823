"""Randomized invariants over rotation systems drawn by hypothesis."""
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rootedmaps import bijections as bj
from rootedmaps.codec import decode, encode
from rootedmaps.core import (
    Mark,
    RootedMap,
    canonical_code,
    canonical_key,
    degree_profile,
    dual,
    is_connected,
)
from rootedmaps.exploration import explore
from rootedmaps.identities import exploration_problems


@st.composite
def rooted_maps(draw, max_edges=6, planar=False):
    n = draw(st.integers(1, max_edges))
    sigma = tuple(draw(st.permutations(range(2 * n))))
    root = draw(st.integers(0, 2 * n - 1))
    m = RootedMap(n, sigma, root)
    assume(is_connected(m))
    if planar:
        assume(m.genus == 0)
    return m


@st.composite
def relabellings(draw, n):
    order = draw(st.permutations(range(n)))
    flips = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return lambda d: 2 * order[d >> 1] + ((d & 1) ^ flips[d >> 1])


def relabel(m, f):
    sigma = [0] * m.n_darts
    for d, s in enumerate(m.sigma):
        sigma[f(d)] = f(s)
    return RootedMap(m.n_edges, tuple(sigma), f(m.root_dart))


def same(m, mark, m2, mark2):
    """Equal as rooted maps carrying a mark; outputs come back canonically labelled."""
    return canonical_key(m, mark) == canonical_key(m2, mark2)


@given(rooted_maps())
def test_euler_and_handshake(m):
    v, n, f = m.num_vertices, m.n_edges, m.num_faces
    assert (2 - v + n - f) % 2 == 0 and m.genus >= 0
    prof, root = degree_profile(m)
    assert prof.num_edges == n and prof.num_vertices == v
    assert root == m.degree(m.root_vertex)


@given(st.data())
def test_code_is_label_invariant(data):
    m = data.draw(rooted_maps())
    f = data.draw(relabellings(m.n_edges))
    other = relabel(m, f)
    assert canonical_code(other) == canonical_code(m)
    x = data.draw(st.integers(0, m.n_darts - 1))
    assert canonical_key(other, Mark.vertex(f(x))) == canonical_key(m, Mark.vertex(x))


@given(rooted_maps())
def test_dual_involution(m):
    d = dual(m)
    assert canonical_code(dual(d)) == canonical_code(m)
    assert (d.num_vertices, d.num_faces, d.genus) == (m.num_faces, m.num_vertices, m.genus)


@given(rooted_maps(), st.integers(0, 11))
def test_codec_round_trip(m, k):
    marks = [Mark.corner(k % (m.n_darts + 1)), Mark.vertex(k % m.n_darts)]
    assert decode(encode(m, marks)) == (m, marks)


@settings(max_examples=60)
@given(rooted_maps(max_edges=7, planar=True))
def test_exploration_invariants(m):
    assert exploration_problems(m) == []


@settings(max_examples=60)
@given(rooted_maps(max_edges=7, planar=True), st.integers(0, 20))
def test_cut_and_slide_round_trip(m, k):
    assume(m.num_faces > 1)
    rank = k % (m.num_faces - 1)
    cs = bj.cut_and_slide(m, rank)
    assert (cs.n_edges, cs.n_faces) == (m.n_edges, m.num_faces)
    assert cs.m1.genus == cs.m2.genus == 0
    assert bj.closure_chain_ok(cs)
    back, rank2 = bj.cut_and_slide_inverse(cs.m1, cs.vertex, cs.m2, cs.leaf)
    assert rank2 == rank and canonical_code(back) == canonical_code(m)


@settings(max_examples=60)
@given(rooted_maps(max_edges=7, planar=True), st.integers(0, 20))
def test_remy_round_trip(m, k):
    vertex = Mark.vertex(min(m.vertices[k % m.num_vertices]))
    res = bj.remy_bijection(m, vertex)
    if res.is_pair:
        assert res.m1.n_edges + res.m2.n_edges == m.n_edges - 1
        assert res.m1.num_faces + res.m2.num_faces == m.num_faces
    else:
        assert (res.map.n_edges, res.map.num_faces) == (m.n_edges - 1, m.num_faces)
    assert same(*bj.remy_inverse(res), m, vertex)


@settings(max_examples=60)
@given(rooted_maps(max_edges=7, planar=True), st.integers(0, 20))
def test_leaf_expand_inverts_retract(m, k):
    leaves = m.leaves()
    assume(leaves)
    leaf = Mark.leaf(m.vertices[leaves[k % len(leaves)]][0])
    r, corner = bj.leaf_retract(m, leaf)
    assert r.n_edges == m.n_edges - 1
    assert same(*bj.leaf_expand(r, corner), m, leaf)


@settings(max_examples=60)
@given(rooted_maps(max_edges=6, planar=True), st.integers(0, 30))
def test_leaf_retract_inverts_expand(m, k):
    corner = Mark.corner(k % (m.n_darts + 1))
    grown, leaf = bj.leaf_expand(m, corner)
    back, c2 = bj.leaf_retract(grown, leaf)
    assert canonical_key(back, c2) == canonical_key(m, corner)


@settings(max_examples=60)
@given(rooted_maps(max_edges=7, planar=True))
def test_discoveries_from_outer_face_disconnect(m):
    from rootedmaps.exploration import is_disconnecting

    expl = explore(m)
    assert len(expl.discoveries) == m.num_faces - 1
    for rank, d in enumerate(expl.discoveries):
        if d.left_face == m.root_face:
            assert is_disconnecting(expl, rank)
