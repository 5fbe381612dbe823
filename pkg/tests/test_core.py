from collections import Counter

import pytest

from rootedmaps.core import (
    BadMark,
    BadRoot,
    DegreeProfile,
    Disconnected,
    Mark,
    NotAPermutation,
    build_map,
    canonical_code,
    canonical_key,
    classify_family,
    degree_profile,
    dual,
    validate_mark,
)
from rootedmaps.enumerate import EnumFilter, enumerate_maps


def test_vertex_map_shape(vertex_map):
    assert vertex_map.n_edges == 0
    assert vertex_map.root_dart is None
    assert (vertex_map.num_vertices, vertex_map.num_faces, vertex_map.genus) == (1, 1, 0)


def test_loop_map_counts(loop_map):
    assert (loop_map.num_vertices, loop_map.num_faces, loop_map.genus) == (1, 2, 0)


def test_torus_two_loop_counts(torus_two_loops):
    m = torus_two_loops
    assert (m.num_vertices, m.num_faces, m.genus) == (1, 1, 1)


def test_edge_map_is_a_tree(edge_map):
    assert (edge_map.num_vertices, edge_map.num_faces, edge_map.genus) == (2, 1, 0)


def test_faces_are_alpha_then_sigma_orbits(double_loop):
    m = double_loop
    for face in m.faces:
        for a, b in zip(face, face[1:] + face[:1]):
            assert b == m.sigma[a ^ 1]
    assert m.num_faces == 3


@pytest.mark.parametrize(
    "n, sigma, root, error",
    [
        (1, [0], 0, NotAPermutation),
        (1, [0, 0], 0, NotAPermutation),
        (1, [1, 0], 2, BadRoot),
        (1, [1, 0], None, BadRoot),
        (0, [], 0, BadRoot),
        (2, [1, 0, 3, 2], 0, Disconnected),
    ],
)
def test_build_map_rejects(n, sigma, root, error):
    with pytest.raises(error):
        build_map(n, sigma, root)


def test_degree_profiles(vertex_map, loop_map, edge_map):
    assert degree_profile(vertex_map) == (DegreeProfile.from_counts({0: 1}), 0)
    assert degree_profile(loop_map) == (DegreeProfile.from_counts({2: 1}), 2)
    assert degree_profile(edge_map) == (DegreeProfile.from_counts({1: 2}), 1)


def test_profile_key_and_handshake():
    p = DegreeProfile.from_counts({3: 2, 1: 2, 2: 0})
    assert p.key() == "1:2,3:2"
    assert p.num_edges == 4 and p.num_vertices == 4
    assert p[3] == 2 and p[5] == 0


def test_family_flags(edge_map, loop_map):
    assert classify_family(edge_map).is_precubic
    assert not classify_family(loop_map).is_precubic
    theta = next(enumerate_maps(3, EnumFilter(family="cubic", genus=0)))
    assert classify_family(theta).is_cubic
    assert theta.num_vertices == 2


def test_dual_swaps_edge_and_loop(edge_map, loop_map):
    assert canonical_code(dual(edge_map)) == canonical_code(loop_map)
    assert canonical_code(dual(loop_map)) == canonical_code(edge_map)


def test_dual_is_involutive_and_swaps_counts():
    for n in range(0, 5):
        for m in enumerate_maps(n):
            d = dual(m)
            assert canonical_code(dual(d)) == canonical_code(m)
            assert (d.num_vertices, d.num_faces, d.genus) == (m.num_faces, m.num_vertices, m.genus)


def test_two_rooted_maps_with_one_edge_have_distinct_codes(edge_map, loop_map):
    assert canonical_code(edge_map) != canonical_code(loop_map)


def test_planar_two_edge_codes_distinct():
    codes = {canonical_code(m) for m in enumerate_maps(2, EnumFilter(genus=0))}
    assert len(codes) == 9


def test_code_ignores_dart_labels(double_loop):
    # swap the two edges and reverse the first: the rooted map is the same
    relabel = {0: 3, 1: 2, 2: 0, 3: 1}
    sigma = [0] * 4
    for d, s in enumerate(double_loop.sigma):
        sigma[relabel[d]] = relabel[s]
    other = build_map(2, sigma, relabel[double_loop.root_dart])
    assert canonical_code(other) == canonical_code(double_loop)


def test_vertex_marks_keyed_by_vertex_not_dart(double_loop):
    m = double_loop
    keys = {canonical_key(m, Mark.vertex(d)) for d in range(4)}
    assert len(keys) == 1


def test_validate_mark_ranges(loop_map, vertex_map):
    validate_mark(loop_map, Mark.discovery(0))
    with pytest.raises(BadMark):
        validate_mark(loop_map, Mark.discovery(1))
    validate_mark(loop_map, Mark.corner(2))  # the arrow half of the root corner
    with pytest.raises(BadMark):
        validate_mark(loop_map, Mark.vertex(2))
    validate_mark(vertex_map, Mark.vertex(None))
    with pytest.raises(BadMark):
        validate_mark(vertex_map, Mark.leaf(None))


def test_handshake_on_all_small_maps():
    for n in range(0, 5):
        tally = Counter()
        for m in enumerate_maps(n):
            prof, _ = degree_profile(m)
            assert prof.num_edges == n
            assert prof.num_vertices == m.num_vertices
            tally[m.genus] += 1
        assert all(g >= 0 for g in tally)
