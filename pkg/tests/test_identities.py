import pytest

from rootedmaps.codec import decode
from rootedmaps.core import degree_profile
from rootedmaps.identities import CATALOG, UnknownIdentity, Verifier
from rootedmaps.recurrences import CountTable, q_planar

SOUND = [k for k, spec in CATALOG.items() if not spec.erratum]
ERRATA = [k for k, spec in CATALOG.items() if spec.erratum]


@pytest.fixture(scope="module")
def verifier():
    return Verifier()


@pytest.mark.parametrize("identity", SOUND)
def test_sound_identities_hold_on_default_range(verifier, identity):
    reports = verifier.run(identity)
    assert reports
    bad = [r.to_json() for r in reports if not r.ok]
    assert not bad, bad[:3]


@pytest.mark.parametrize("identity", ERRATA)
def test_printed_forms_fail_with_witness(verifier, identity):
    reports = verifier.run(identity)
    bad = [r for r in reports if not r.ok]
    assert bad
    m, _ = decode(bad[0].witness)
    assert m.genus == 0


def test_dual_formula_point(verifier):
    (r,) = [r for r in verifier.run("dual", 2) if r.params == {"n": 2, "f": 2}]
    assert (r.lhs, r.rhs) == (5, 5)


def test_printed_degree_remy_counterexample(verifier):
    reports = verifier.run("degree-remy")
    (r,) = [r for r in reports if r.params == {"r": 1, "f": 2, "profile": "1:1,3:1", "p": 3}]
    assert (r.lhs, r.rhs) == (1, 0)
    assert sum(not r.ok for r in reports) == 178
    m, _ = decode(r.witness)
    prof, root = degree_profile(m)
    assert (prof.key(), root, m.num_faces) == ("1:1,3:1", 1, 2)


def test_corrected_degree_remy_uses_loop_term(verifier):
    reports = verifier.run("degree-remy-corrected")
    assert all(r.ok for r in reports)
    assert any(r.terms["loop"] for r in reports)


def test_misplaced_term_is_the_whole_gap(verifier):
    printed = {tuple(r.params.values()): r for r in verifier.run("calc-first-printed")}
    for (n, f), r in printed.items():
        assert r.rhs - r.lhs == 2 * (2 * n - 1) * q_planar(n - 1, f)
    summed = {tuple(r.params.values()): r for r in verifier.run("calc-sum-printed")}
    for (n, f), r in summed.items():
        assert r.lhs - r.rhs == 2 * (2 * n - 1) * q_planar(n - 1, f)


def test_two_face_formula_readings(verifier):
    reports = {(r.params["g"], r.params["n"]): r for r in verifier.run("eq8")}
    r = reports[(1, 8)]
    assert set(r.terms["readings"]) == {"unordered,n", "unordered,n-6", "ordered,n", "ordered,n-6"}
    assert r.terms["balancing"] == ["unordered,n"]
    # genus 0 has no tripod term: every reading reduces to the precubic formula at f=2
    for (g, n), rep in reports.items():
        if g == 0:
            assert len(rep.terms["balancing"]) == 4


def test_conflicting_table_is_reported():
    table = CountTable()
    table.record(("Q", 2, 2), 6, "recurrence")
    reports = Verifier(table=table).run("cc-planar", 2)
    (r,) = [r for r in reports if r.params == {"n": 2, "f": 2}]
    assert not r.ok and "gave 6" in r.terms["conflict"]


def test_recurrence_entries_carry_both_provenances(verifier):
    verifier.run("enum-totals", 4)
    assert verifier.table.provenance(("Q", 4, 3)) == {"enumeration", "recurrence"}


def test_unknown_identity(verifier):
    with pytest.raises(UnknownIdentity):
        verifier.run("no-such-identity")


def test_reports_serialize(verifier):
    r = verifier.run("remy", 2)[0]
    data = r.to_json()
    assert set(data) == {"identity", "params", "lhs", "rhs", "ok", "terms"}
