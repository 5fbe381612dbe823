"""Catalog of counting identities and bijection checks, evaluated exactly.

Each catalog entry turns a range of sizes into a list of
:class:`IdentityReport`.  Counting identities take both sides from
enumeration; where a closed recurrence exists its values are written into
the shared :class:`~rootedmaps.recurrences.CountTable` next to the
enumerated ones, so any disagreement surfaces as a provenance conflict.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import bijections as bj
from . import twofaces as tf
from .census import Census
from .codec import encode
from .core import DegreeProfile, Mark, RootedMap, canonical_key, normalize_mark
from .enumerate import Budget, EnumFilter, enumerate_maps
from .exploration import dual_dfs_parents, explore, is_disconnecting
from .recurrences import (
    CountTable,
    NegativeMultiplicity,
    ProvenanceConflict,
    delta_apply,
    harer_zagier,
    profile_minus,
    q_full,
    q_planar,
    splits,
    t_full,
    t_planar,
)


@dataclass
class IdentityReport:
    identity: str
    params: dict
    lhs: int
    rhs: int
    ok: bool
    terms: dict = field(default_factory=dict)
    witness: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ok": self.ok,
            "terms": self.terms,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    description: str
    default_max: int
    run: Callable[["Verifier", int], list[IdentityReport]]
    erratum: bool = False  # a printed form kept to document that it fails


CATALOG: dict[str, IdentitySpec] = {}


def _register(identity_id: str, default_max: int, description: str, erratum: bool = False):
    def wrap(fn):
        CATALOG[identity_id] = IdentitySpec(identity_id, description, default_max, fn, erratum)
        return fn

    return wrap


class UnknownIdentity(KeyError):
    pass


class Verifier:
    """Runs catalog entries against a shared census and count table."""

    def __init__(self, census: Optional[Census] = None, table: Optional[CountTable] = None, budget: Optional[Budget] = None,
                 genus: Optional[int] = None):
        self.budget = budget
        self.genus = genus  # restricts the two-face checks to maps of this genus
        self.census = census or Census(budget=budget)
        self.table = table or CountTable()

    def run(self, identity_id: str, max_edges: Optional[int] = None) -> list[IdentityReport]:
        try:
            spec = CATALOG[identity_id]
        except KeyError:
            raise UnknownIdentity(identity_id) from None
        n = spec.default_max if max_edges is None else max_edges
        return spec.run(self, n)

    def run_all(self, max_edges: Optional[int] = None) -> list[IdentityReport]:
        out = []
        for identity_id in CATALOG:
            out.extend(self.run(identity_id, max_edges))
        return out

    # -- shared helpers ----------------------------------------------------

    def q(self, n: int, f: int, genus: int = 0) -> int:
        if n < 0 or f < 1:
            return 0
        return self.census.q(n, f, genus)

    def crosscheck(self, key: tuple, enumerated: int, recurrence: int) -> Optional[str]:
        """Write both values under one key; returns the conflict message if any."""
        try:
            self.table.record(key, enumerated, "enumeration")
            self.table.record(key, recurrence, "recurrence")
        except ProvenanceConflict as exc:
            return str(exc)
        return None

    def maps(self, n: int, flt: Optional[EnumFilter] = None) -> Iterable[RootedMap]:
        return enumerate_maps(n, flt, self.budget)

    def witness(self, n: int, pred: Callable[[RootedMap], bool], flt: Optional[EnumFilter] = None) -> Optional[str]:
        for m in self.maps(n, flt or EnumFilter(genus=0)):
            if pred(m):
                return encode(m)
        return None


def _report(v: Verifier, identity: str, params: dict, lhs: int, rhs: int, terms: Optional[dict] = None,
            witness: Optional[Callable[[], Optional[str]]] = None, ok: Optional[bool] = None) -> IdentityReport:
    good = (lhs == rhs) if ok is None else ok
    wit = None if good or witness is None else witness()
    return IdentityReport(identity, params, lhs, rhs, good, terms or {}, wit)


def _faces_range(n: int) -> range:
    return range(1, n + 2)


def _vcount(n: int, f: int) -> int:
    return 2 + n - f


def _planar_pred(f: int):
    return lambda m: m.num_faces == f


# -- enumeration against recurrences ----------------------------------------------


@_register("enum-totals", 5, "planar and all-genus totals from enumeration vs the recurrences")
def _enum_totals(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(0, max_n + 1):
        conflicts = [c for f in _faces_range(n) if (c := v.crosscheck(("Q", n, f), v.census.q(n, f), q_planar(n, f)))]
        lhs = v.census.total(n, genus=0)
        rhs = sum(q_planar(n, f) for f in _faces_range(n))
        out.append(_report(v, "enum-totals", {"n": n, "class": "planar"}, lhs, rhs,
                           {"conflicts": conflicts}, ok=lhs == rhs and not conflicts))
    for n in range(0, max_n + 1):
        lhs = v.census.total(n)
        rhs = sum(q_full(n, f, g) for f in _faces_range(n) for g in range(n + 1))
        out.append(_report(v, "enum-totals", {"n": n, "class": "all-genus"}, lhs, rhs))
    return out


# -- planar identities -------------------------------------------------------------


def _cut_slide_rhs(v: Verifier, n: int, f: int) -> int:
    total = 0
    for i, j in splits(n - 1):
        for f1, f2 in splits(f, 1):
            total += _vcount(i, f1) * v.q(i, f1) * (2 * j + 1) * v.q(j, f2)
    return total


@_register("cut-slide", 5, "(f-1)Q(n,f) against pairs (map + vertex, map + leaf)")
def _cut_slide(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(0, max_n + 1):
        for f in _faces_range(n):
            out.append(_report(v, "cut-slide", {"n": n, "f": f}, (f - 1) * v.q(n, f), _cut_slide_rhs(v, n, f),
                               witness=lambda n=n, f=f: v.witness(n, _planar_pred(f))))
    return out


@_register("remy", 5, "vQ(n,f) against marked corners and pairs of vertex-marked maps")
def _remy(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        for f in _faces_range(n):
            corner = 2 * (2 * n - 1) * v.q(n - 1, f)
            pairs = sum(
                _vcount(i, f1) * v.q(i, f1) * _vcount(j, f2) * v.q(j, f2)
                for i, j in splits(n - 1)
                for f1, f2 in splits(f, 1)
            )
            out.append(_report(v, "remy", {"n": n, "f": f}, _vcount(n, f) * v.q(n, f), corner + pairs,
                               {"corners": corner, "pairs": pairs},
                               witness=lambda n=n, f=f: v.witness(n, _planar_pred(f))))
    return out


def _cc_planar_rhs(q, n: int, f: int) -> int:
    total = 2 * (2 * n - 1) * (q(n - 1, f) + q(n - 1, f - 1))
    for i, j in splits(n - 2):
        for f1, f2 in splits(f, 1):
            total += 3 * (2 * i + 1) * (2 * j + 1) * q(i, f1) * q(j, f2)
    return total


@_register("cc-planar", 5, "planar three-term recurrence for Q(n,f)")
def _cc_planar(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        for f in _faces_range(n):
            conflict = v.crosscheck(("Q", n, f), v.census.q(n, f), q_planar(n, f))
            lhs, rhs = (n + 1) * v.q(n, f), _cc_planar_rhs(v.q, n, f)
            out.append(_report(v, "cc-planar", {"n": n, "f": f}, lhs, rhs,
                               {"recurrence_value": q_planar(n, f), "conflict": conflict},
                               witness=lambda n=n, f=f: v.witness(n, _planar_pred(f)),
                               ok=lhs == rhs and conflict is None))
    return out


@_register("dual", 5, "(v-1)Q(n,f), the vertex/face dual of the cut-slide formula")
def _dual(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(0, max_n + 1):
        for f in _faces_range(n):
            rhs = sum(
                (2 * i + 1) * v.q(i, f1) * f2 * v.q(j, f2)
                for i, j in splits(n - 1)
                for f1, f2 in splits(f + 1, 1)
            )
            out.append(_report(v, "dual", {"n": n, "f": f}, (_vcount(n, f) - 1) * v.q(n, f), rhs,
                               witness=lambda n=n, f=f: v.witness(n, _planar_pred(f))))
    return out


# -- precubic and cubic --------------------------------------------------------------


def _precubic_rhs(v: Verifier, n: int, f: int) -> int:
    return sum(
        v.census.alpha_marked(1, i, f1) * v.census.alpha_marked(1, j, f2)
        for i, j in splits(n)
        for f1, f2 in splits(f, 1)
    )


@_register("precubic", 9, "(f-1)alpha(n,f) against pairs of leaf-marked precubic maps")
def _precubic(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        for f in _faces_range(n):
            out.append(_report(v, "precubic", {"n": n, "f": f}, (f - 1) * v.census.alpha(n, f), _precubic_rhs(v, n, f),
                               witness=lambda n=n, f=f: v.witness(n, _planar_pred(f), EnumFilter(genus=0, family="precubic"))))
    return out


@_register("gj-planar", 12, "planar cubic recurrence for T(n), with the precubic link (edges up to the bound)")
def _gj_planar(v: Verifier, max_edges: int) -> list[IdentityReport]:
    out = []
    t = v.census.t
    top = max_edges // 3
    for m in range(1, top + 1):
        conflict = v.crosscheck(("T", m), t(m), t_planar(m))
        lhs = (m + 1) * t(m)
        rhs = 4 * (3 * m - 1) * t(m - 1)
        rhs += 4 * sum((3 * i + 2) * (3 * j + 2) * t(i) * t(j) for i, j in splits(m - 2))
        out.append(_report(v, "gj-planar", {"n": m, "relation": "recurrence"}, lhs, rhs,
                           {"enumerated": t(m), "recurrence_value": t_planar(m), "conflict": conflict},
                           witness=lambda m=m: v.witness(3 * m, lambda _: True, EnumFilter(genus=0, family="cubic")),
                           ok=lhs == rhs and conflict is None))
    # precubic maps with 3m+2 edges and m+2 faces have the root as only degree-1 vertex
    for m in range(0, (min(max_edges, 9) - 2) // 3 + 1):
        out.append(_report(v, "gj-planar", {"n": m, "relation": "precubic-root-only"},
                           v.census.alpha(3 * m + 2, m + 2), t(m)))
    # one extra leaf: retracting it leaves a marked side of a root-only map
    for m in range(0, (min(max_edges, 9) - 4) // 3 + 1):
        out.append(_report(v, "gj-planar", {"n": m, "relation": "one-leaf"},
                           v.census.alpha_marked(1, 3 * m + 4, m + 2), 2 * (3 * m + 2) * t(m)))
    return out


# -- all genera ----------------------------------------------------------------------


@_register("cc-full", 4, "three-term recurrence for Q_g(n,f) over all genera")
def _cc_full(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    q = v.q
    for n in range(1, max_n + 1):
        for g in range(0, n // 2 + 1):
            for f in range(1, n + 2 - 2 * g):
                conflict = v.crosscheck(("Qg", n, f, g), v.census.q(n, f, g), q_full(n, f, g))
                rhs = 2 * (2 * n - 1) * (q(n - 1, f, g) + q(n - 1, f - 1, g))
                rhs += (2 * n - 3) * (n - 1) * (2 * n - 1) * (q(n - 2, f, g - 1) if g else 0)
                for i, j in splits(n - 2):
                    for f1, f2 in splits(f, 1):
                        for g1, g2 in splits(g):
                            rhs += 3 * (2 * i + 1) * (2 * j + 1) * q(i, f1, g1) * q(j, f2, g2)
                lhs = (n + 1) * q(n, f, g)
                out.append(_report(v, "cc-full", {"n": n, "f": f, "g": g}, lhs, rhs, {"conflict": conflict},
                                   witness=lambda n=n, f=f, g=g: v.witness(n, lambda m: m.num_faces == f, EnumFilter(genus=g)),
                                   ok=lhs == rhs and conflict is None))
    return out


@_register("gj-full", 9, "cubic recurrence for T(n,g) over all genera (edges up to the bound)")
def _gj_full(v: Verifier, max_edges: int) -> list[IdentityReport]:
    out = []
    t = v.census.t
    for n in range(1, max_edges // 3 + 1):
        for g in range(0, n // 2 + 2):
            conflict = v.crosscheck(("Tg", n, g), t(n, g), t_full(n, g))
            rhs = 4 * n * (3 * n - 2) * (3 * n - 4) * (t(n - 2, g - 1) if g and n >= 2 else 0)
            rhs += 4 * (3 * n - 1) * t(n - 1, g)
            for i, j in splits(n - 2):
                for g1, g2 in splits(g):
                    rhs += 4 * (3 * i + 2) * (3 * j + 2) * t(i, g1) * t(j, g2)
            rhs += 2 * int(n == 1 and g == 1)
            lhs = (n + 1) * t(n, g)
            out.append(_report(v, "gj-full", {"n": n, "g": g}, lhs, rhs, {"conflict": conflict},
                               witness=lambda n=n, g=g: v.witness(3 * n, lambda _: True, EnumFilter(genus=g, family="cubic")),
                               ok=lhs == rhs and conflict is None))
    return out


@_register("harer-zagier", 4, "one-face maps satisfy the Harer-Zagier recurrence")
def _harer_zagier(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    eps = lambda n, g: v.q(n, 1, g) if n >= 0 and g >= 0 else 0  # noqa: E731
    for n in range(1, max_n + 1):
        for g in range(0, n // 2 + 1):
            lhs = (n + 1) * eps(n, g)
            rhs = 2 * (2 * n - 1) * eps(n - 1, g) + (n - 1) * (2 * n - 1) * (2 * n - 3) * eps(n - 2, g - 1)
            agree = eps(n, g) == harer_zagier(n, g) == q_full(n, 1, g)
            out.append(_report(v, "harer-zagier", {"n": n, "g": g}, lhs, rhs,
                               {"enumerated": eps(n, g), "hz_value": harer_zagier(n, g), "q_full_value": q_full(n, 1, g)},
                               witness=lambda n=n, g=g: v.witness(n, lambda m: m.num_faces == 1, EnumFilter(genus=g)),
                               ok=lhs == rhs and agree))
    return out


# -- degree profiles -------------------------------------------------------------------


class _ProfileTable:
    def __init__(self, rows: Counter):
        self.rows = rows
        self.by_edges: dict[int, list] = {}
        for (r, f, p), c in rows.items():
            self.by_edges.setdefault(p.num_edges, []).append((r, f, p, c))

    def get(self, r: int, f: int, p: DegreeProfile) -> int:
        return self.rows.get((r, f, p), 0)

    def decompositions(self, total: DegreeProfile, root: int):
        """(f1, u, M(root,f1,u), w) for all tabulated u <= total with root degree ``root``."""
        for n1 in range(0, total.num_edges + 1):
            for r1, f1, u, c1 in self.by_edges.get(n1, ()):
                if r1 != root:
                    continue
                w = profile_minus(total, u)
                if w is not None:
                    yield f1, u, c1, w


def _delta(p: DegreeProfile, degrees) -> Optional[DegreeProfile]:
    try:
        return delta_apply(p, degrees)
    except NegativeMultiplicity:
        return None


def _profile_table(v: Verifier, max_n: int, precubic: bool = False) -> _ProfileTable:
    rows: Counter = Counter()
    for n in range(0, max_n + 1):
        rows.update(v.census.precubic_table(n) if precubic else v.census.m_table(n))
    return _ProfileTable(rows)


def _degree_cut_slide_rhs(tab: _ProfileTable, r: int, f: int, prof: DegreeProfile) -> tuple[int, int]:
    n = prof.num_edges
    first = second = 0
    for j in range(1, 2 * n + 1):
        for k in range(1, 2 * n + 1):
            total = _delta(prof, [1, j, k, -(j + k + 1)])
            if total is None:
                continue
            for f1, u, c1, w in tab.decompositions(total, r):
                first += (u[j] - (j == r)) * c1 * (w[1] - (k == 1)) * tab.get(k, f - f1, w)
    for j in range(0, r):
        k = r - 1 - j
        total = _delta(prof, [1, -r, k, j])
        if total is None:
            continue
        for f1, u, c1, w in tab.decompositions(total, j):
            second += c1 * (w[1] - (k == 1)) * tab.get(k, f - f1, w)
    return first, second


def _profile_witness(v: Verifier, r: int, f: int, prof: DegreeProfile):
    from .core import degree_profile

    def pred(m):
        p, root = degree_profile(m)
        return m.num_faces == f and root == r and p == prof

    return lambda: v.witness(prof.num_edges, pred)


@_register("degree-cut-slide", 5, "cut-slide refined by root degree and degree profile")
def _degree_cut_slide(v: Verifier, max_n: int) -> list[IdentityReport]:
    tab = _profile_table(v, max_n)
    out = []
    for (r, f, prof), c in sorted(tab.rows.items(), key=lambda kv: (kv[0][2].num_edges, kv[0][0], kv[0][1], kv[0][2].key())):
        if prof.num_edges == 0:
            continue
        first, second = _degree_cut_slide_rhs(tab, r, f, prof)
        out.append(_report(v, "degree-cut-slide", {"r": r, "f": f, "profile": prof.key()}, (f - 1) * c, first + second,
                           {"non_root_split": first, "root_split": second}, witness=_profile_witness(v, r, f, prof)))
    return out


def _degree_remy_terms(tab: _ProfileTable, r: int, f: int, prof: DegreeProfile, p: int, corrected: bool) -> dict:
    """Terms of the node case of the refined Remy formula.

    ``corrected`` excludes the root from the vertex multiplicities of the
    contracted vertex and of the second map's marked vertex, and adds the
    loop case where the marked vertex is its own discovery vertex.
    """
    n = prof.num_edges
    contraction = non_root = root = loop = 0
    for j in range(1, 2 * n + 1):
        u = _delta(prof, [-j, -p, j + p - 2])
        if u is not None:
            merged = j + p - 2
            contraction += (u[merged] - (corrected and merged == r)) * tab.get(r, f, u)
    for j in range(0, 2 * n + 1):
        for k in range(0, 2 * n + 1):
            total = _delta(prof, [-p, p - 1, j, k, -(j + k + 1)])
            if total is None:
                continue
            for f1, u, c1, w in tab.decompositions(total, r):
                marked = w[p - 1] - (corrected and p - 1 == k)
                non_root += (u[j] - (j == r)) * c1 * marked * tab.get(k, f - f1, w)
    for k in range(0, r):
        total = _delta(prof, [-p, p - 1, -r, k, r - k - 1])
        if total is None:
            continue
        for f1, u, c1, w in tab.decompositions(total, r - 1 - k):
            marked = w[p - 1] - (corrected and p - 1 == k)
            root += c1 * marked * tab.get(k, f - f1, w)
    if corrected:
        for k in range(1, p):
            j = p - 1 - k
            total = _delta(prof, [-p, j, k - 1])
            if total is None:
                continue
            for f1, u, c1, w in tab.decompositions(total, r):
                loop += (u[j] - (j == r)) * c1 * tab.get(k - 1, f - f1, w)
    return {"contraction": contraction, "non_root_discovery": non_root, "root_discovery": root, "loop": loop}


def _degree_remy(v: Verifier, max_n: int, corrected: bool, name: str) -> list[IdentityReport]:
    tab = _profile_table(v, max_n)
    out = []
    for (r, f, prof), c in sorted(tab.rows.items(), key=lambda kv: (kv[0][2].num_edges, kv[0][0], kv[0][1], kv[0][2].key())):
        n = prof.num_edges
        for p in range(2, 2 * n + 1):
            terms = _degree_remy_terms(tab, r, f, prof, p, corrected)
            lhs = (prof[p] - (p == r)) * c
            out.append(_report(v, name, {"r": r, "f": f, "profile": prof.key(), "p": p}, lhs, sum(terms.values()),
                               terms, witness=_profile_witness(v, r, f, prof)))
    return out


@_register("degree-remy", 5, "node case of the degree-refined Remy formula, as printed", erratum=True)
def _degree_remy_printed(v: Verifier, max_n: int) -> list[IdentityReport]:
    return _degree_remy(v, max_n, False, "degree-remy")


@_register("degree-remy-corrected", 5, "node case of the degree-refined Remy formula with root exclusions and the loop term")
def _degree_remy_corrected(v: Verifier, max_n: int) -> list[IdentityReport]:
    return _degree_remy(v, max_n, True, "degree-remy-corrected")


@_register("degree-precubic-specialization", 9, "degree-refined cut-slide summed over precubic profiles gives the precubic formula")
def _degree_precubic(v: Verifier, max_n: int) -> list[IdentityReport]:
    tab = _profile_table(v, max_n, precubic=True)
    lhs_sum: Counter = Counter()
    rhs_sum: Counter = Counter()
    for (r, f, prof), c in tab.rows.items():
        n = prof.num_edges
        lhs_sum[(n, f)] += (f - 1) * c
        first, second = _degree_cut_slide_rhs(tab, r, f, prof)
        rhs_sum[(n, f)] += first + second
    out = []
    for n in range(1, max_n + 1):
        for f in _faces_range(n):
            eq_lhs = (f - 1) * v.census.alpha(n, f)
            eq_rhs = _precubic_rhs(v, n, f)
            same = lhs_sum[(n, f)] == eq_lhs and rhs_sum[(n, f)] == eq_rhs
            out.append(_report(v, "degree-precubic-specialization", {"n": n, "f": f}, lhs_sum[(n, f)], rhs_sum[(n, f)],
                               {"precubic_lhs": eq_lhs, "precubic_rhs": eq_rhs},
                               ok=lhs_sum[(n, f)] == rhs_sum[(n, f)] and same))
    return out


# -- steps of the planar derivation --------------------------------------------------


def _triples(total: int, low: int = 0):
    for a in range(low, total + 1):
        for b in range(low, total - a + 1):
            c = total - a - b
            if c >= low:
                yield a, b, c


class _Steps:
    def __init__(self, q):
        self.q = q

    def odd_pairs(self, n, f):
        q = self.q
        return sum((2 * i + 1) * q(i, f1) * (2 * j + 1) * q(j, f2) for i, j in splits(n - 2) for f1, f2 in splits(f, 1))

    def s_value(self, n, f):
        q = self.q
        return sum((i + 1) * q(i, f1) * _vcount(j, f2) * q(j, f2) for i, j in splits(n - 1) for f1, f2 in splits(f, 1))

    def triple_v(self, n, f):
        q = self.q
        return sum(
            (2 * i + 1) * q(i, f1) * _vcount(j, f2) * q(j, f2) * _vcount(k, f3) * q(k, f3)
            for i, j, k in _triples(n - 2)
            for f1, f2, f3 in _triples(f, 1)
        )

    def triple_odd(self, n, f):
        q = self.q
        return sum(
            (2 * i + 1) * q(i, f1) * (2 * j + 1) * q(j, f2) * _vcount(k, f3) * q(k, f3)
            for i, j, k in _triples(n - 3)
            for f1, f2, f3 in _triples(f, 1)
        )

    def weighted(self, n, f, weight):
        q = self.q
        return sum((2 * i + 1) * q(i, f1) * weight(f2) * q(j, f2) for i, j in splits(n - 2) for f1, f2 in splits(f, 1))


def _step_points(max_n: int):
    for n in range(1, max_n + 1):
        for f in _faces_range(n):
            yield n, f


def _steps(identity: str, lhs_rhs):
    def run(v: Verifier, max_n: int) -> list[IdentityReport]:
        st = _Steps(v.q)
        out = []
        for n, f in _step_points(max_n):
            lhs, rhs = lhs_rhs(st, n, f)
            out.append(_report(v, identity, {"n": n, "f": f}, lhs, rhs,
                               witness=lambda n=n, f=f: v.witness(n, _planar_pred(f))))
        return out

    return run


def _first_printed(st, n, f):
    q = st.q
    rhs = (2 * n - 1) * q(n - 1, f - 1) + 2 * (2 * n - 1) * q(n - 1, f) + 2 * st.odd_pairs(n, f) + st.triple_v(n, f)
    return (f - 1) * q(n, f), rhs


def _first_fixed(st, n, f):
    q = st.q
    return (f - 1) * q(n, f), (2 * n - 1) * q(n - 1, f - 1) + 2 * st.odd_pairs(n, f) + st.triple_v(n, f)


def _second(st, n, f):
    q = st.q
    rhs = (2 * n - 1) * q(n - 1, f - 1) + 2 * st.odd_pairs(n, f)
    rhs += sum((f1 - 1) * q(i, f1) * _vcount(j, f2) * q(j, f2) for i, j in splits(n - 1) for f1, f2 in splits(f, 1))
    return (f - 1) * q(n, f), rhs


def _sum_printed(st, n, f):
    q = st.q
    return (n + 1) * q(n, f), (2 * n - 1) * q(n - 1, f - 1) + 2 * st.odd_pairs(n, f) + st.s_value(n, f)


def _sum_fixed(st, n, f):
    lhs, rhs = _sum_printed(st, n, f)
    return lhs, rhs + 2 * (2 * n - 1) * st.q(n - 1, f)


def _target(st, n, f):
    return st.s_value(n, f), (2 * n - 1) * st.q(n - 1, f - 1) + st.odd_pairs(n, f)


def _expand(st, n, f):
    q = st.q
    rhs = sum(
        (2 * (2 * i - 1) * q(i - 1, f1) + 2 * (2 * i - 1) * q(i - 1, f1 - 1)) * _vcount(j, f2) * q(j, f2)
        for i, j in splits(n - 1)
        for f1, f2 in splits(f, 1)
    )
    rhs += 3 * st.triple_odd(n, f) + _vcount(n, f) * q(n - 1, f - 1)
    return st.s_value(n, f), rhs


def _cs_term(st, n, f):
    q = st.q
    lhs = sum(
        2 * (2 * i - 1) * q(i - 1, f1 - 1) * _vcount(j, f2) * q(j, f2)
        for i, j in splits(n - 1)
        for f1, f2 in splits(f, 1)
    )
    return lhs, 2 * (f - 2) * q(n - 1, f - 1)


def _triple(st, n, f):
    return st.triple_odd(n, f), st.weighted(n, f, lambda f2: f2 - 1)


def _final(st, n, f):
    rhs = (2 * (f - 2) + _vcount(n, f)) * st.q(n - 1, f - 1) + st.odd_pairs(n, f) + st.weighted(n, f, lambda f2: f2)
    return st.s_value(n, f), rhs


def _dual_term(st, n, f):
    return st.weighted(n, f, lambda f2: f2), (_vcount(n, f) - 1) * st.q(n - 1, f - 1)


for _id, _fn, _desc in (
    ("calc-first-printed", _first_printed, "cut-slide then Remy then cut-slide backwards, first form as printed"),
    ("calc-first", _first_fixed, "same first form without the misplaced 2(2n-1)Q(n-1,f) term"),
    ("calc-second", _second, "second form of (f-1)Q(n,f) after re-applying cut-slide"),
    ("calc-sum-printed", _sum_printed, "(n+1)Q(n,f) as the sum with the Remy formula, as printed"),
    ("calc-sum", _sum_fixed, "(n+1)Q(n,f) as the sum with the Remy formula, with 2(2n-1)Q(n-1,f) restored"),
    ("calc-target", _target, "the closed form wanted for S"),
    ("calc-expand", _expand, "S expanded with the recurrence at smaller sizes"),
    ("calc-cut-slide-term", _cs_term, "the shifted cut-slide sum equals 2(f-2)Q(n-1,f-1)"),
    ("calc-triple", _triple, "the triple sum collapses to a double sum"),
    ("calc-final", _final, "S after substituting both sums"),
    ("calc-dual-term", _dual_term, "the dual formula closes the computation"),
):
    _register(_id, 5, _desc, erratum=_id.endswith("-printed"))(_steps(_id, _fn))


# -- bijections ------------------------------------------------------------------------


def _vertex_marks(m: RootedMap) -> list[Mark]:
    if m.n_edges == 0:
        return [Mark.vertex(None)]
    return [Mark.vertex(min(c)) for c in m.vertices]


def _leaf_marks(m: RootedMap) -> list[Mark]:
    return [Mark.leaf(m.vertices[x][0]) for x in m.leaves()]


def _same(m: RootedMap, mark: Mark, m2: RootedMap, mark2: Mark) -> bool:
    return m == m2 and normalize_mark(m, mark) == normalize_mark(m2, mark2)


def _planar(v: Verifier, n: int) -> list[RootedMap]:
    return list(v.maps(n, EnumFilter(genus=0)))


def _bij_report(v: Verifier, identity: str, n: int, lhs: int, rhs: int, failures: Counter, witness: Optional[str]) -> IdentityReport:
    ok = lhs == rhs and not failures
    return IdentityReport(identity, {"n": n}, lhs, rhs, ok, dict(failures), None if ok else witness)


@_register("bij-cut-slide", 4, "cut-and-slide: round trips, image equals the pair population, closure chain")
def _bij_cut_slide(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    planar = {n: _planar(v, n) for n in range(0, max_n + 1)}
    for n in range(1, max_n + 1):
        failures: Counter = Counter()
        witness = None
        image = set()
        count = 0
        for m in planar[n]:
            expl = explore(m)
            for rank in range(len(expl.discoveries)):
                count += 1
                cs = bj.cut_and_slide(m, rank, expl)
                problems = []
                if (cs.n_edges, cs.n_faces) != (n, m.num_faces) or cs.m1.genus or cs.m2.genus:
                    problems.append("conservation")
                if not bj.closure_chain_ok(cs):
                    problems.append("closure_chain")
                if bj.cut_and_slide_inverse(cs.m1, cs.vertex, cs.m2, cs.leaf) != (m, rank):
                    problems.append("inverse_after_forward")
                key = (canonical_key(cs.m1, cs.vertex), canonical_key(cs.m2, cs.leaf))
                if key in image:
                    problems.append("not_injective")
                image.add(key)
                for p in problems:
                    failures[p] += 1
                if problems and witness is None:
                    witness = encode(m, [Mark.discovery(rank)])
        population = 0
        for i in range(0, n):
            for m1 in planar[i]:
                for m2 in planar[n - i]:
                    for vm in _vertex_marks(m1):
                        for lm in _leaf_marks(m2):
                            population += 1
                            key = (canonical_key(m1, vm), canonical_key(m2, lm))
                            if key not in image:
                                failures["not_surjective"] += 1
                            mb, rank = bj.cut_and_slide_inverse(m1, vm, m2, lm)
                            cs = bj.cut_and_slide(mb, rank)
                            if not (_same(cs.m1, cs.vertex, m1, vm) and _same(cs.m2, cs.leaf, m2, lm)):
                                failures["forward_after_inverse"] += 1
                                if witness is None:
                                    witness = encode(m1, [vm]) + encode(m2, [lm])
        out.append(_bij_report(v, "bij-cut-slide", n, count, population, failures, witness))
    return out


@_register("bij-split", 4, "split at a disconnecting discovery and its inverse")
def _bij_split(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        failures: Counter = Counter()
        witness = None
        count = 0
        for m in _planar(v, n):
            expl = explore(m)
            for rank in range(len(expl.discoveries)):
                if not is_disconnecting(expl, rank):
                    continue
                count += 1
                s = bj.split_at_disconnecting(m, rank, expl)
                problems = []
                if s.m2.face_of[s.leaf.value] != s.m2.root_face:
                    problems.append("leaf_not_outer")
                if bj.unsplit(s.m1, s.vertex, s.m2, s.leaf) != (m, rank):
                    problems.append("round_trip")
                for p in problems:
                    failures[p] += 1
                if problems and witness is None:
                    witness = encode(m, [Mark.discovery(rank)])
        out.append(_bij_report(v, "bij-split", n, count, count, failures, witness))
    return out


def _remy_key(res: bj.RemyResult):
    if res.is_pair:
        return ("pair", canonical_key(res.m1, res.vertex1), canonical_key(res.m2, res.vertex2))
    return (res.case, canonical_key(res.map, res.corner))


@_register("bij-remy", 4, "generalized Remy map with leaf retraction: round trips and image population")
def _bij_remy(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    planar = {n: _planar(v, n) for n in range(0, max_n + 1)}
    for n in range(1, max_n + 1):
        failures: Counter = Counter()
        witness = None
        image = set()
        count = 0
        for m in planar[n]:
            for vm in _vertex_marks(m):
                count += 1
                res = bj.remy_bijection(m, vm)
                problems = []
                if res.is_pair:
                    if (res.m1.n_edges + res.m2.n_edges, res.m1.num_faces + res.m2.num_faces) != (n - 1, m.num_faces):
                        problems.append("conservation")
                elif (res.map.n_edges, res.map.num_faces) != (n - 1, m.num_faces):
                    problems.append("conservation")
                back, bm = bj.remy_inverse(res)
                if not _same(back, bm, m, vm):
                    problems.append("inverse_after_forward")
                key = _remy_key(res)
                if key in image:
                    problems.append("not_injective")
                image.add(key)
                for p in problems:
                    failures[p] += 1
                if problems and witness is None:
                    witness = encode(m, [vm])
        population = set()
        for m1 in planar[n - 1]:
            corners = [None] if n == 1 else range(m1.n_darts + 1)
            for c in corners:
                for tag in ("leaf_retraction", "node_contraction"):
                    population.add((tag, canonical_key(m1, Mark.corner(c))))
        for i in range(0, n):
            for m1 in planar[i]:
                for m2 in planar[n - 1 - i]:
                    for a in _vertex_marks(m1):
                        for b in _vertex_marks(m2):
                            population.add(("pair", canonical_key(m1, a), canonical_key(m2, b)))
        failures["not_surjective"] += len(population - image)
        failures += Counter()  # drop zero entries
        out.append(_bij_report(v, "bij-remy", n, count, len(population), failures, witness))
    return out


@_register("bij-leaf", 4, "leaf retraction into a corner and leaf expansion")
def _bij_leaf(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        failures: Counter = Counter()
        witness = None
        count = 0
        image = set()
        for m in _planar(v, n):
            for lm in _leaf_marks(m):
                count += 1
                r, c = bj.leaf_retract(m, lm)
                b, l2 = bj.leaf_expand(r, c)
                key = canonical_key(r, c)
                problems = [] if _same(b, l2, m, lm) else ["round_trip"]
                if key in image:
                    problems.append("not_injective")
                image.add(key)
                for p in problems:
                    failures[p] += 1
                if problems and witness is None:
                    witness = encode(m, [lm])
        population = sum(2 * (n - 1) + 1 for _ in _planar(v, n - 1))
        out.append(_bij_report(v, "bij-leaf", n, count, population, failures, witness))
    return out


@_register("bij-precubic-leaf", 8, "precubic leaf retraction into a side-edge and its inverse")
def _bij_precubic_leaf(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    flt = EnumFilter(genus=0, family="precubic")
    for n in range(3, max_n + 1):
        failures: Counter = Counter()
        witness = None
        image = set()
        count = 0
        for m in v.maps(n, flt):
            for lm in _leaf_marks(m):
                try:
                    r, s = bj.precubic_leaf_retract(m, lm)
                except bj.DegenerateNeighbor:
                    failures["degenerate"] += 1
                    continue
                count += 1
                b, l2 = bj.precubic_leaf_expand(r, s)
                problems = [] if _same(b, l2, m, lm) else ["round_trip"]
                key = canonical_key(r, s)
                if key in image:
                    problems.append("not_injective")
                image.add(key)
                for p in problems:
                    failures[p] += 1
                if problems and witness is None:
                    witness = encode(m, [lm])
        population = sum(r.n_darts for r in v.maps(n - 2, flt))
        out.append(_bij_report(v, "bij-precubic-leaf", n, count, population, failures, witness))
    return out


@_register("bij-contract", 4, "last-edge contraction and edge growing, with the exploration-order check")
def _bij_contract(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        failures: Counter = Counter()
        witness = None
        count = 0
        for m in _planar(v, n):
            for vm in _vertex_marks(m):
                try:
                    r, c = bj.contract_last_edge(m, vm)
                except (bj.LastSonPrecedes, bj.MarkIsLeaf):
                    continue
                count += 1
                b, bm = bj.grow_edge(r, c)
                problems = [] if _same(b, bm, m, vm) else ["round_trip"]
                expl = explore(b)
                x = b.vertex_of[bm.value]
                son = b.vertex_of[bj.last_edge(b, x, expl) ^ 1]
                if not expl.first_label(x) < expl.first_label(son):
                    problems.append("order_after_grow")
                for p in problems:
                    failures[p] += 1
                if problems and witness is None:
                    witness = encode(m, [vm])
        out.append(_bij_report(v, "bij-contract", n, count, count, failures, witness))
    return out


# -- exploration -------------------------------------------------------------------------


def exploration_problems(m: RootedMap) -> list[str]:
    """Names of the exploration invariants violated by a planar map."""
    expl = explore(m)
    problems = []
    if len(expl.discoveries) != m.num_faces - 1:
        problems.append("discovery_count")
    if sorted(expl.corner_label) != list(range(m.n_darts)):
        problems.append("labels_not_bijective")
    if dual_dfs_parents(m) != expl.face_parent:
        problems.append("dual_dfs")
    for x, cyc in enumerate(m.vertices):
        if not cyc:
            continue
        start = expl.vertex_first_corner[x]
        seq = [expl.corner_label[start]]
        d = m.sigma[start]
        while d != start:
            seq.append(expl.corner_label[d])
            d = m.sigma[d]
        if seq != sorted(seq):
            problems.append("clockwise")
        touches_outer = any(m.face_of[d] == m.root_face for d in cyc)
        if touches_outer and expl.corner_face(expl.vertex_last_corner[x]) != m.root_face:
            problems.append("outer_face_last_corner")
    for rank, disc in enumerate(expl.discoveries):
        if disc.left_face == m.root_face and not is_disconnecting(expl, rank):
            problems.append("outer_not_disconnecting")
    return sorted(set(problems))


@_register("explore-invariants", 5, "discovery count, clockwise labels, outer-face last corner, dual DFS")
def _explore_invariants(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(0, max_n + 1):
        failures: Counter = Counter()
        witness = None
        total = good = 0
        for m in v.maps(n, EnumFilter(genus=0)):
            total += 1
            problems = exploration_problems(m)
            if not problems:
                good += 1
            for p in problems:
                failures[p] += 1
            if problems and witness is None:
                witness = encode(m)
        out.append(_bij_report(v, "explore-invariants", n, total, good, failures, witness))
    return out


# -- two faces ----------------------------------------------------------------------------


def _genera(v: Verifier, n: int, shift: int = 0) -> list[int]:
    """Genera to scan at size n; ``shift`` = 1 gives the genus of the tripods."""
    if v.genus is not None:
        return [v.genus - shift] if v.genus - shift >= 0 else []
    return list(range(0, n // 6 + 2))


@_register("twoface-special", 9, "2g+1 special vertices on two-faced precubic maps")
def _twoface_special(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        for g in _genera(v, n):
            maps = list(tf.two_faced_precubic(n, g, v.budget))
            if not maps:
                continue
            failures: Counter = Counter()
            witness = None
            found = 0
            for m in maps:
                tfe = tf.explore_two_faced(m)
                special = tf.special_vertices(m, tfe)
                tris = tf.find_trisections(m, tfe.corner_label)
                found += len(special)
                problems = []
                if len(special) != 2 * g + 1:
                    problems.append("special_count")
                if tfe.discovery_vertex in tris:
                    problems.append("discovery_is_trisection")
                if m.degree(tfe.discovery_vertex) != 3:
                    problems.append("discovery_degree")
                for p in problems:
                    failures[p] += 1
                if problems and witness is None:
                    witness = encode(m)
            out.append(IdentityReport("twoface-special", {"n": n, "g": g}, (2 * g + 1) * len(maps), found,
                                      (2 * g + 1) * len(maps) == found and not failures, dict(failures), witness))
    return out


@_register("trisections", 6, "2g trisections on every one-faced map")
def _trisections(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(0, max_n + 1):
        expected = found = 0
        bad = 0
        witness = None
        for m in v.maps(n, EnumFilter(faces=1)):
            k = len(tf.trisection_corners(m))
            expected += 2 * m.genus
            found += k
            if k != 2 * m.genus:
                bad += 1
                witness = witness or encode(m)
        out.append(IdentityReport("trisections", {"n": n}, expected, found, expected == found and not bad,
                                  {"maps_failing": bad} if bad else {}, witness))
    return out


@_register("split-glue", 9, "splitting special vertices and gluing back")
def _split_glue(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        for g in _genera(v, n):
            maps = list(tf.two_faced_precubic(n, g, v.budget))
            if not maps:
                continue
            failures: Counter = Counter()
            kinds: Counter = Counter()
            witness = None
            total = 0
            for m in maps:
                tfe = tf.explore_two_faced(m)
                for x in tf.special_vertices(m, tfe):
                    total += 1
                    s = tf.split_at_special(m, x, tfe)
                    problems = []
                    if isinstance(s, tf.PairSplit):
                        kinds["pair"] += 1
                        if x != tfe.discovery_vertex:
                            problems.append("pair_off_discovery")
                        ok_counts = (s.m1.num_faces, s.m2.num_faces) == (1, 1) and s.m1.genus + s.m2.genus == g
                        ok_counts &= s.m1.n_edges + s.m2.n_edges == n
                        if not ok_counts:
                            problems.append("pair_bookkeeping")
                        if tf.glue_pair(s) != (m, x):
                            problems.append("pair_round_trip")
                    else:
                        kinds["tripod"] += 1
                        t = s.tripod.map
                        if (t.genus, t.num_faces, t.n_edges, t.num_vertices) != (g - 1, 2, n, m.num_vertices + 2):
                            problems.append("tripod_bookkeeping")
                        gl = tf.glue_tripod(s.tripod, s.gluing)
                        if (gl.map, gl.vertex, gl.valid) != (m, x, True):
                            problems.append("tripod_round_trip")
                    for p in problems:
                        failures[p] += 1
                    if problems and witness is None:
                        witness = encode(m, [Mark.vertex(min(m.vertices[x]))])
            out.append(IdentityReport("split-glue", {"n": n, "g": g}, total, total - sum(failures.values()),
                                      not failures, {**dict(kinds), **dict(failures)}, witness))
    return out


def _tripod_witness(t: tf.Tripod) -> str:
    return encode(t.map, [Mark.leaf(d) for d in t.leaves])


@_register("gluing-balance", 9, "tripods with no valid gluing are as many as those with two")
def _gluing_balance(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        for g in _genera(v, n, 1):
            counts: Counter = Counter()
            witness = None
            for t in tf.tripods(n, g, v.budget):
                k = tf.valid_gluings(t)
                counts[k] += 1
                if k == 0 and witness is None:
                    witness = _tripod_witness(t)
            if not counts:
                continue
            ok = counts[0] == counts[2]
            out.append(IdentityReport("gluing-balance", {"n": n, "tripod_genus": g}, counts[0], counts[2], ok,
                                      {str(k): counts[k] for k in (0, 1, 2)}, None if ok else witness))
    return out


@_register("tripod-classification", 9, "predicted number of valid gluings matches gluing both ways")
def _tripod_classification(v: Verifier, max_n: int) -> list[IdentityReport]:
    out = []
    for n in range(1, max_n + 1):
        for g in _genera(v, n, 1):
            total = agree = 0
            by_class: Counter = Counter()
            witness = None
            for t in tf.tripods(n, g, v.budget):
                total += 1
                cls = tf.classify_tripod(t)
                actual = tf.valid_gluings(t)
                by_class[f"{cls.label}:{actual}"] += 1
                if cls.valid_gluings == actual:
                    agree += 1
                elif witness is None:
                    witness = _tripod_witness(t)
            if total:
                out.append(IdentityReport("tripod-classification", {"n": n, "tripod_genus": g}, total, agree,
                                          total == agree, dict(sorted(by_class.items())), witness))
    return out


TRIPOD_TERM_READINGS = {
    "unordered,n": (False, 0),
    "unordered,n-6": (False, 6),
    "ordered,n": (True, 0),
    "ordered,n-6": (True, 6),
}


@_register("eq8", 9, "two-faced precubic formula under each reading of the tripod term")
def _two_face_precubic_formula(v: Verifier, max_n: int) -> list[IdentityReport]:
    """One report per (g, n); ok when at least one reading balances exactly.

    The verdict of every reading is listed in the terms so that a reader sees
    which one holds instead of the checker assuming one.
    """
    c = v.census
    out = []
    for g in _genera(v, max_n):
        for n in range(1, max_n + 1):
            lhs = (2 * g + 1) * c.alpha(n, 2, g)
            pairs = sum(
                c.alpha_marked(1, i, 1, g1) * c.alpha_marked(1, j, 1, g2)
                for i, j in splits(n)
                for g1, g2 in splits(g)
            )
            readings = {}
            for name, (ordered, shift) in TRIPOD_TERM_READINGS.items():
                tripod_term = c.alpha_marked(3, n - shift, 2, g - 1, ordered) if g >= 1 else 0
                readings[name] = {"rhs": pairs + tripod_term, "balances": lhs == pairs + tripod_term}
            if lhs == 0 and all(r["rhs"] == 0 for r in readings.values()):
                continue
            balancing = [k for k, r in readings.items() if r["balances"]]
            out.append(IdentityReport("eq8", {"g": g, "n": n}, lhs, readings["unordered,n"]["rhs"], bool(balancing),
                                      {"pairs": pairs, "readings": readings, "balancing": balancing}))
    return out
