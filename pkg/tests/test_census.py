import json

from rootedmaps.census import CACHE_ENV, Census, CountCache, default_cache_path
from rootedmaps.enumerate import EnumFilter, enumerate_maps
from rootedmaps.recurrences import q_planar, t_planar


def test_marginals():
    c = Census()
    assert c.q(2, 2) == 5
    assert c.total(3) == 74
    assert c.t(0) == 1 and c.t(1) == t_planar(1)
    assert c.alpha(1, 1) == 1


def test_marked_leaf_counts():
    c = Census()
    for n in range(1, 8):
        direct = {}
        for m in enumerate_maps(n, EnumFilter(genus=0, family="precubic")):
            direct[m.num_faces] = direct.get(m.num_faces, 0) + len(m.leaves())
        for f in range(1, n + 2):
            assert c.alpha_marked(1, n, f) == direct.get(f, 0)
    for n in range(1, 8):
        for f in range(1, n + 2):
            assert c.alpha_marked(0, n, f) == c.alpha(n, f)


def test_ordered_versus_unordered():
    c = Census()
    for n in range(6, 10):
        assert c.alpha_marked(3, n, 2, 0, ordered=True) == 6 * c.alpha_marked(3, n, 2, 0)


def test_cache_round_trip(tmp_path):
    path = tmp_path / "counts.json"
    first = Census(CountCache(path))
    value = first.q(4, 3)
    first.save()
    data = json.loads(path.read_text())
    assert data["version"] == 1
    assert data["entries"]["maps/4"]["provenance"] == "enumeration"
    second = Census(CountCache(path))
    assert second.rows("maps", 4) == first.rows("maps", 4)
    assert second.q(4, 3) == value == q_planar(4, 3)


def test_cache_ignores_other_versions(tmp_path):
    path = tmp_path / "counts.json"
    path.write_text(json.dumps({"version": 0, "entries": {"maps/1": {"rows": [[0, 2, 2, "2:1", 0, 99]]}}}))
    assert Census(CountCache(path)).q(1, 2) == 1


def test_default_path_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert default_cache_path() == tmp_path / "counts.json"
