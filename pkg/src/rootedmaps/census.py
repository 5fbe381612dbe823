"""Enumeration-backed count tables, optionally persisted as JSON.

One pass over the maps of a family and size records, for each combination of
(genus, faces, root degree, degree profile, number of leaves), how many maps
fall there.  Every count the identity checker needs is a marginal of these
rows.
"""
from __future__ import annotations

import json
import os
import tempfile
from collections import Counter
from math import comb, perm
from pathlib import Path
from typing import Callable, Optional

from .core import DegreeProfile, degree_profile
from .enumerate import Budget, EnumFilter, enumerate_maps

CACHE_ENV = "ROOTEDMAPS_CACHE_DIR"
CACHE_VERSION = 1
FAMILIES = ("maps", "precubic", "cubic")


def default_cache_path() -> Path:
    base = os.environ.get(CACHE_ENV)
    root = Path(base) if base else Path.home() / ".cache" / "rootedmaps"
    return root / "counts.json"


Row = tuple[int, int, int, str, int]  # genus, faces, root degree, profile key, leaves


class CountCache:
    """JSON file of census rows, keyed by family and edge count."""

    def __init__(self, path: Path | str):
        self.path = Path(path)
        self._data: dict[str, dict] = {}
        if self.path.exists():
            raw = json.loads(self.path.read_text())
            if raw.get("version") == CACHE_VERSION:
                self._data = raw.get("entries", {})

    @staticmethod
    def _key(family: str, n: int) -> str:
        return f"{family}/{n}"

    def get(self, family: str, n: int) -> Optional[Counter]:
        entry = self._data.get(self._key(family, n))
        if entry is None:
            return None
        return Counter({tuple(r[:5]): r[5] for r in entry["rows"]})

    def put(self, family: str, n: int, rows: Counter) -> None:
        self._data[self._key(family, n)] = {
            "provenance": "enumeration",
            "rows": [list(k) + [v] for k, v in sorted(rows.items())],
        }

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps({"version": CACHE_VERSION, "entries": self._data}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".counts-")
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, self.path)


class Census:
    """Memoized enumeration counts for maps, precubic maps and cubic maps."""

    def __init__(self, cache: Optional[CountCache] = None, budget: Optional[Budget] = None):
        self.cache = cache
        self.budget = budget
        self._rows: dict[tuple[str, int], Counter] = {}

    def rows(self, family: str, n: int) -> Counter:
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        key = (family, n)
        if key not in self._rows:
            rows = self.cache.get(family, n) if self.cache else None
            if rows is None:
                rows = Counter()
                flt = EnumFilter(family="all" if family == "maps" else family)
                for m in enumerate_maps(n, flt, self.budget):
                    profile, r = degree_profile(m)
                    rows[(m.genus, m.num_faces, r, profile.key(), len(m.leaves()))] += 1
                if self.cache:
                    self.cache.put(family, n, rows)
            self._rows[key] = rows
        return self._rows[key]

    def _sum(self, family: str, n: int, pick: Callable[[Row], bool], weight: Callable[[Row], int] = lambda row: 1) -> int:
        if n < 0:
            return 0
        return sum(c * weight(k) for k, c in self.rows(family, n).items() if pick(k))

    # general maps
    def total(self, n: int, genus: Optional[int] = None) -> int:
        return self._sum("maps", n, lambda k: genus is None or k[0] == genus)

    def q(self, n: int, f: int, genus: int = 0) -> int:
        return self._sum("maps", n, lambda k: k[0] == genus and k[1] == f)

    def m_table(self, n: int) -> Counter:
        """Planar counts keyed by (root degree, faces, profile)."""
        out: Counter = Counter()
        for (g, f, r, prof, _), c in self.rows("maps", n).items():
            if g == 0:
                out[(r, f, _profile(prof))] += c
        return out

    # cubic maps, indexed by n = edges / 3
    def t(self, n: int, genus: int = 0) -> int:
        if n == 0:
            return int(genus == 0)  # the vertex map counts as the empty cubic map
        return self._sum("cubic", 3 * n, lambda k: k[0] == genus)

    # precubic maps
    def alpha(self, n: int, f: int, genus: int = 0) -> int:
        return self._sum("precubic", n, lambda k: k[0] == genus and k[1] == f)

    def alpha_marked(self, k_leaves: int, n: int, f: int, genus: int = 0, ordered: bool = False) -> int:
        choose = perm if ordered else comb
        return self._sum(
            "precubic", n, lambda k: k[0] == genus and k[1] == f, lambda k: choose(k[4], k_leaves)
        )

    def precubic_table(self, n: int) -> Counter:
        out: Counter = Counter()
        for (g, f, r, prof, _), c in self.rows("precubic", n).items():
            if g == 0:
                out[(r, f, _profile(prof))] += c
        return out

    def save(self) -> None:
        if self.cache:
            self.cache.save()


def _profile(key: str) -> DegreeProfile:
    if not key:
        return DegreeProfile(())
    return DegreeProfile(tuple(tuple(int(x) for x in part.split(":")) for part in key.split(",")))
