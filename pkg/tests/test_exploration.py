import pytest

from rootedmaps.core import build_map
from rootedmaps.enumerate import EnumFilter, enumerate_maps
from rootedmaps.exploration import (
    BadRank,
    GenusNotZero,
    dual_dfs_parents,
    explore,
    is_disconnecting,
    previous_discovery,
    tour,
)
from rootedmaps.identities import exploration_problems
from rootedmaps.surgery import ROOT


def planar(n):
    return enumerate_maps(n, EnumFilter(genus=0))


def test_tree_has_no_discovery(edge_map):
    expl = explore(edge_map)
    assert expl.discoveries == ()
    assert expl.face_parent == {}


def test_loop_map(loop_map):
    expl = explore(loop_map)
    (d,) = expl.discoveries
    assert d.vertex == loop_map.root_vertex
    assert previous_discovery(expl, 0) is None
    assert is_disconnecting(expl, 0)


def test_double_loop_has_two_discoveries(double_loop):
    assert len(explore(double_loop).discoveries) == 2


def test_vertex_map_exploration(vertex_map):
    expl = explore(vertex_map)
    assert expl.vertex_last_corner == {0: ROOT}
    assert expl.label(ROOT) == 0


def test_root_corner_gets_first_label(double_loop):
    expl = explore(double_loop)
    assert expl.corner_label[double_loop.root_dart] == 0
    assert expl.label(ROOT) == double_loop.n_darts


def test_nested_loops_chain_previous_discoveries():
    # inner loop sits inside the outer loop's face
    found = False
    for m in planar(2):
        expl = explore(m)
        if len(expl.discoveries) == 2 and previous_discovery(expl, 1) == 0:
            found = True
            assert expl.discoveries[0].entered_face == expl.discoveries[1].left_face
    assert found


def test_previous_discovery_links_faces():
    for n in range(1, 5):
        for m in planar(n):
            expl = explore(m)
            for rank, d in enumerate(expl.discoveries):
                prev = previous_discovery(expl, rank)
                if prev is None:
                    assert d.left_face == m.root_face
                else:
                    assert expl.discoveries[prev].entered_face == d.left_face


def test_nested_inner_discovery_can_disconnect():
    hits = 0
    for n in range(2, 5):
        for m in planar(n):
            expl = explore(m)
            for rank, d in enumerate(expl.discoveries):
                if d.left_face != m.root_face and is_disconnecting(expl, rank):
                    hits += 1
    assert hits > 0


@pytest.mark.parametrize("n", range(0, 6))
def test_invariants_exhaustive(n):
    for m in planar(n):
        assert exploration_problems(m) == []


def test_face_tree_matches_recursive_dual_search():
    for m in planar(5):
        assert dual_dfs_parents(m) == explore(m).face_parent


def test_positive_genus_rejected(torus_two_loops):
    with pytest.raises(GenusNotZero):
        explore(torus_two_loops)
    assert len(tour(torus_two_loops).corner_label) == 4


def test_bad_rank(loop_map):
    expl = explore(loop_map)
    with pytest.raises(BadRank):
        previous_discovery(expl, 1)
    with pytest.raises(BadRank):
        is_disconnecting(expl, -1)


def test_labels_walk_the_tour():
    m = build_map(3, [2, 4, 1, 5, 3, 0], 0)
    expl = tour(m)
    assert sorted(expl.corner_label) == list(range(6))


def test_json_view(loop_map):
    data = explore(loop_map).to_json()
    assert data["arrow_label"] == 2
    assert data["vertex_last_corner"] == {"0": "arrow"}
    assert data["discoveries"][0]["rank"] == 0
