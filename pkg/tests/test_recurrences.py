import pytest

from rootedmaps.core import DegreeProfile
from rootedmaps.enumerate import EnumFilter, count_maps
from rootedmaps.recurrences import (
    CountTable,
    NegativeMultiplicity,
    NonIntegral,
    ProvenanceConflict,
    delta_apply,
    exact_div,
    harer_zagier,
    profile_minus,
    q_full,
    q_planar,
    t_full,
    t_planar,
)


def prof(**kw):
    return DegreeProfile.from_counts({int(k[1:]): v for k, v in kw.items()})


def test_base_cases():
    assert q_planar(0, 1) == 1
    assert q_planar(0, 2) == 0
    assert t_planar(0) == 1


@pytest.mark.parametrize("n", range(0, 6))
def test_planar_recurrence_matches_enumeration(n):
    table = count_maps(n, EnumFilter(genus=0), "faces")
    assert {f: q_planar(n, f) for f in range(1, n + 2)} == table


def test_known_planar_values():
    assert q_planar(2, 2) == 5
    assert [q_planar(3, f) for f in range(1, 5)] == [5, 22, 22, 5]
    assert [sum(q_planar(n, f) for f in range(1, n + 2)) for n in range(6)] == [1, 2, 9, 54, 378, 2916]


@pytest.mark.parametrize("n", range(0, 7))
def test_planar_duality(n):
    for f in range(1, n + 2):
        assert q_planar(n, f) == q_planar(n, n + 2 - f)


def test_cubic_planar_matches_enumeration():
    for n in range(0, 4):
        found = count_maps(3 * n, EnumFilter(genus=0, family="cubic")).get("all", 0) if n else 1
        assert t_planar(n) == found
    assert [t_planar(n) for n in range(3)] == [1, 4, 32]


@pytest.mark.parametrize("n", range(0, 5))
def test_all_genus_matches_enumeration(n):
    table = count_maps(n, None, "faces-genus")
    rec = {(f, g): q_full(n, f, g) for f in range(1, n + 2) for g in range(0, n + 1) if q_full(n, f, g)}
    assert rec == table


def test_torus_two_loop_count():
    assert q_full(2, 1, 1) == 1
    assert sum(q_full(2, f, g) for f in range(1, 4) for g in range(2)) == 10


def test_genus_zero_specialization():
    for n in range(0, 7):
        for f in range(1, n + 2):
            assert q_full(n, f, 0) == q_planar(n, f)


def test_cubic_all_genus_matches_enumeration():
    for n in (1, 2, 3):
        table = count_maps(3 * n, EnumFilter(family="cubic"), "genus")
        assert {g: t_full(n, g) for g in range(0, n + 1) if t_full(n, g)} == table


def test_harer_zagier_is_one_face_slice():
    for n in range(0, 9):
        for g in range(0, n // 2 + 1):
            assert harer_zagier(n, g) == q_full(n, 1, g)


def test_exact_div():
    assert exact_div(12, 4) == 3
    with pytest.raises(NonIntegral):
        exact_div(7, 2)


def test_delta_operators():
    empty = DegreeProfile(())
    assert delta_apply(empty, [1]) == prof(v1=1)
    assert delta_apply(prof(v5=1), [1, 3, -5]) == prof(v1=1, v3=1)
    assert delta_apply(prof(v2=1), [2, 2]) == prof(v2=3)
    assert delta_apply(empty, [0]) == prof(v0=1)
    with pytest.raises(NegativeMultiplicity):
        delta_apply(prof(v2=1), [-3])


def test_profile_minus():
    assert profile_minus(prof(v1=2, v3=1), prof(v1=1)) == prof(v1=1, v3=1)
    assert profile_minus(prof(v1=1), prof(v3=1)) is None


def test_count_table_provenance():
    t = CountTable()
    t.record(("Q", 2, 2), 5, "enumeration")
    t.record(("Q", 2, 2), 5, "recurrence")
    assert t.provenance(("Q", 2, 2)) == {"enumeration", "recurrence"}
    with pytest.raises(ProvenanceConflict):
        t.record(("Q", 2, 2), 6, "recurrence")
    with pytest.raises(ValueError):
        t.record(("Q", 1, 1), 1, "guess")
    big = 10**40
    t.record(("T", 99), big, "recurrence")
    assert {"key": ["T", 99], "value": str(big), "provenance": ["recurrence"]} in t.to_json()
