"""Command-line front end: enumerate, count, verify, apply.

Exit status is 0 on success, 1 when an identity fails or a budget runs out,
and 2 on bad usage or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import bijections as bj
from .census import Census, CountCache, default_cache_path
from .codec import ParseError, decode_stream, encode, encode_stream
from .core import MapError, Mark, MarkKind, RootedMap
from .enumerate import GROUPINGS, Budget, BudgetExceeded, EnumFilter, enumerate_maps
from .exploration import tour
from .identities import CATALOG, UnknownIdentity, Verifier
from .recurrences import q_full, t_full

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _budget(args) -> Optional[Budget]:
    if args.max_seconds is None and args.max_instances is None:
        return None
    return Budget(args.max_seconds, args.max_instances)


def _census(args, budget) -> Census:
    cache = CountCache(args.cache) if args.cache else None
    return Census(cache, budget)


# -- enumerate ------------------------------------------------------------------


def cmd_enumerate(args, out: TextIO) -> int:
    flt = EnumFilter(faces=args.faces, genus=args.genus, family=args.family, max_degree=args.max_degree)
    maps = enumerate_maps(args.edges, flt, _budget(args))
    if args.json:
        rows = [{"edges": m.n_edges, "root": m.root_dart, "sigma": list(m.sigma)} for m in maps]
        out.write(_dump(rows) + "\n")
    else:
        for m in maps:
            out.write(encode(m))
    return EXIT_OK


# -- count -------------------------------------------------------------------------


def _group(group_by: str, genus: int, faces: int, root: int, profile: str):
    return {
        "none": "all",
        "faces": faces,
        "genus": genus,
        "faces-genus": (faces, genus),
        "degree-profile": (root, profile),
    }[group_by]


def _count_enum(args, census: Census) -> dict:
    counts: dict = {}
    for (g, f, r, prof, _), c in census.rows(args.family, args.edges).items():
        if args.genus is not None and g != args.genus:
            continue
        if args.faces is not None and f != args.faces:
            continue
        key = _group(args.group_by, g, f, r, prof)
        counts[key] = counts.get(key, 0) + c
    return counts


def _count_recurrence(args) -> dict:
    n = args.edges
    if args.group_by == "degree-profile":
        raise UsageError("no recurrence is keyed by degree profile; use --method enum")
    if args.family == "precubic":
        raise UsageError("no closed recurrence for precubic maps; use --method enum")
    if args.family == "cubic":
        if n % 3:
            return {}
        if args.group_by in ("faces", "faces-genus") or args.faces is not None:
            raise UsageError("the cubic recurrence is not refined by faces; use --method enum")
        genera = [args.genus] if args.genus is not None else range(0, n // 3 + 1)
        values = {g: t_full(n // 3, g) for g in genera} if n else {0: 1}
        cells = {(None, g): c for g, c in values.items() if c}
    else:
        genera = [args.genus] if args.genus is not None else range(0, n // 2 + 1)
        faces = [args.faces] if args.faces is not None else range(1, n + 2)
        cells = {(f, g): q_full(n, f, g) for f in faces for g in genera}
        cells = {k: c for k, c in cells.items() if c}
    counts: dict = {}
    for (f, g), c in cells.items():
        key = _group(args.group_by, g, f, None, None)
        counts[key] = counts.get(key, 0) + c
    return counts


def cmd_count(args, out: TextIO) -> int:
    budget = _budget(args)
    if args.method == "enum":
        census = _census(args, budget)
        counts = _count_enum(args, census)
        census.save()
    else:
        counts = _count_recurrence(args)
    items = sorted(counts.items(), key=lambda kv: str(kv[0]))
    if args.group_by == "none":
        total = counts.get("all", 0)
        if args.json:
            out.write(_dump({"family": args.family, "edges": args.edges, "method": args.method, "count": total}) + "\n")
        else:
            out.write(f"{total}\n")
        return EXIT_OK
    if args.json:
        table = {_key_str(k): v for k, v in items}
        out.write(_dump({"family": args.family, "edges": args.edges, "method": args.method,
                         "group_by": args.group_by, "counts": table}) + "\n")
    else:
        for k, v in items:
            out.write(f"{_key_str(k)}\t{v}\n")
    return EXIT_OK


def _key_str(key) -> str:
    if isinstance(key, tuple):
        return ",".join(str(x) for x in key)
    return str(key)


# -- verify ---------------------------------------------------------------------------


def cmd_verify(args, out: TextIO) -> int:
    budget = _budget(args)
    census = _census(args, budget)
    verifier = Verifier(census=census, budget=budget, genus=args.genus)
    if args.identity == "all":
        ids = [k for k, spec in CATALOG.items() if args.include_errata or not spec.erratum]
    else:
        ids = [args.identity]
    reports = []
    try:
        for identity_id in ids:
            reports.extend(verifier.run(identity_id, args.max_edges))
    except UnknownIdentity as exc:
        raise UsageError(f"unknown identity {exc.args[0]!r}; see 'verify --list'") from None
    finally:
        census.save()
    failed = [r for r in reports if not r.ok]
    if args.json:
        out.write(_dump([r.to_json() for r in reports]) + "\n")
    else:
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            out.write(f"{'ok  ' if r.ok else 'FAIL'} {r.identity} {params} lhs={r.lhs} rhs={r.rhs}\n")
        out.write(f"{len(reports) - len(failed)}/{len(reports)} ok\n")
        for r in failed[:1]:
            if r.witness:
                out.write(f"# smallest counterexample for {r.identity}\n{r.witness}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_list(out: TextIO) -> int:
    for spec in CATALOG.values():
        tag = " [printed form, known to fail]" if spec.erratum else ""
        out.write(f"{spec.id}\t(default max {spec.default_max})\t{spec.description}{tag}\n")
    return EXIT_OK


# -- apply ------------------------------------------------------------------------------


def _read(path: str) -> list[tuple[RootedMap, list[Mark]]]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return decode_stream(text)


def _inputs(args, count: int) -> list[tuple[RootedMap, list[Mark]]]:
    items = _read(args.input)
    if args.in2:
        items += _read(args.in2)
    if len(items) != count:
        raise UsageError(f"--op {args.op} takes {count} map(s), got {len(items)}")
    return items


def _mark(item, *kinds: MarkKind) -> Mark:
    m, marks = item
    found = [mk for mk in marks if mk.kind in kinds]
    if len(found) != 1:
        names = "/".join(k.value for k in kinds)
        raise UsageError(f"expected exactly one {names} mark, got {len(found)}")
    return found[0]


def _emit(args, out: TextIO, items: Sequence[tuple[RootedMap, Sequence[Mark]]], note: Optional[str] = None) -> None:
    if args.out:
        prefix = Path(args.out)
        names = [prefix.with_suffix(".map")] if len(items) == 1 else [
            prefix.parent / f"{prefix.name}{i}.map" for i in range(1, len(items) + 1)
        ]
        for path, (m, marks) in zip(names, items):
            path.write_text(encode(m, marks))
            out.write(f"{path}\n")
        return
    if note:
        out.write(f"# {note}\n")
    out.write(encode_stream(items))


REMY_CASES = {"leaf-retraction": "leaf_retraction", "node-contraction": "node_contraction"}


def cmd_apply(args, out: TextIO) -> int:
    op = args.op
    if op == "explore":
        (item,) = _inputs(args, 1)
        out.write(_dump(tour(item[0]).to_json()) + "\n")
    elif op == "cut-slide":
        (item,) = _inputs(args, 1)
        cs = bj.cut_and_slide(item[0], _mark(item, MarkKind.DISCOVERY).value)
        _emit(args, out, [(cs.m1, [cs.vertex]), (cs.m2, [cs.leaf])])
    elif op == "cut-slide-inv":
        a, b = _inputs(args, 2)
        m, rank = bj.cut_and_slide_inverse(a[0], _mark(a, MarkKind.VERTEX, MarkKind.LEAF), b[0], _mark(b, MarkKind.LEAF))
        _emit(args, out, [(m, [Mark.discovery(rank)])])
    elif op == "remy":
        (item,) = _inputs(args, 1)
        res = bj.remy_bijection(item[0], _mark(item, MarkKind.VERTEX, MarkKind.LEAF))
        if res.is_pair:
            _emit(args, out, [(res.m1, [res.vertex1]), (res.m2, [res.vertex2])], note="remy pair")
        else:
            case = res.case.replace("_", "-")
            _emit(args, out, [(res.map, [res.corner])], note=f"remy {case}")
            if args.out:
                out.write(f"case {case}\n")
    elif op == "remy-inv":
        items = _read(args.input) + (_read(args.in2) if args.in2 else [])
        if len(items) == 2:
            a, b = items
            res = bj.RemyResult("pair", m1=a[0], vertex1=_mark(a, MarkKind.VERTEX), m2=b[0], vertex2=_mark(b, MarkKind.VERTEX))
        elif len(items) == 1:
            if args.case is None:
                raise UsageError("a single-map remy inverse needs --case")
            (a,) = items
            res = bj.RemyResult(REMY_CASES[args.case], map=a[0], corner=_mark(a, MarkKind.CORNER))
        else:
            raise UsageError(f"--op remy-inv takes 1 or 2 maps, got {len(items)}")
        m, vertex = bj.remy_inverse(res)
        _emit(args, out, [(m, [vertex])])
    elif op == "leaf-retract":
        (item,) = _inputs(args, 1)
        m, corner = bj.leaf_retract(item[0], _mark(item, MarkKind.LEAF))
        _emit(args, out, [(m, [corner])])
    elif op == "leaf-expand":
        (item,) = _inputs(args, 1)
        m, leaf = bj.leaf_expand(item[0], _mark(item, MarkKind.CORNER))
        _emit(args, out, [(m, [leaf])])
    elif op == "precubic-leaf-retract":
        (item,) = _inputs(args, 1)
        m, side = bj.precubic_leaf_retract(item[0], _mark(item, MarkKind.LEAF))
        _emit(args, out, [(m, [side])])
    elif op == "precubic-leaf-expand":
        (item,) = _inputs(args, 1)
        m, leaf = bj.precubic_leaf_expand(item[0], _mark(item, MarkKind.SIDE_EDGE))
        _emit(args, out, [(m, [leaf])])
    return EXIT_OK


APPLY_OPS = (
    "explore",
    "cut-slide",
    "cut-slide-inv",
    "remy",
    "remy-inv",
    "leaf-retract",
    "leaf-expand",
    "precubic-leaf-retract",
    "precubic-leaf-expand",
)


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-seconds", type=float, help="stop enumerating after this many seconds")
    common.add_argument("--max-instances", type=int, help="stop after enumerating this many maps")
    common.add_argument("--cache", nargs="?", const=str(default_cache_path()), metavar="PATH",
                        help="persist enumeration counts to a JSON file (default location if PATH is omitted)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="rootedmaps", description="Exhaustive checks on rooted combinatorial maps.")
    sub = p.add_subparsers(dest="command", required=True)

    def family_flags(sp):
        sp.add_argument("--family", choices=("maps", "precubic", "cubic"), default="maps")
        sp.add_argument("--edges", type=int, required=True)
        sp.add_argument("--genus", type=int)
        sp.add_argument("--faces", type=int)

    e = sub.add_parser("enumerate", parents=[common], help="list rooted maps as a map stream")
    family_flags(e)
    e.add_argument("--max-degree", type=int)

    c = sub.add_parser("count", parents=[common], help="count rooted maps")
    family_flags(c)
    c.add_argument("--group-by", choices=GROUPINGS, default="none")
    c.add_argument("--method", choices=("enum", "recurrence"), default="enum")

    v = sub.add_parser("verify", parents=[common], help="check identities and bijections")
    v.add_argument("--identity", default="all", help="identity id, or 'all'")
    v.add_argument("--max-edges", type=int, help="size bound (defaults per identity)")
    v.add_argument("--genus", type=int, help="restrict the two-face checks to this genus")
    v.add_argument("--include-errata", action="store_true", help="with 'all', also run the printed forms known to fail")
    v.add_argument("--list", action="store_true", help="list identity ids and exit")

    a = sub.add_parser("apply", parents=[common], help="run one bijection on map files")
    a.add_argument("--op", choices=APPLY_OPS, required=True)
    a.add_argument("--in", dest="input", required=True, help="map file ('-' for stdin)")
    a.add_argument("--in2", help="second map file for two-map inputs")
    a.add_argument("--case", choices=tuple(REMY_CASES), help="which single-map case to invert for remy-inv")
    a.add_argument("--out", help="write results to PREFIX.map or PREFIX1.map, PREFIX2.map")
    return p


def _validate(args) -> None:
    for flag in ("edges", "max_edges", "max_instances"):
        value = getattr(args, flag, None)
        if value is not None and value < 0:
            raise UsageError(f"--{flag.replace('_', '-')} must be non-negative")
    if getattr(args, "genus", None) is not None and args.genus < 0:
        raise UsageError("--genus must be non-negative")


def run(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _validate(args)
        if args.command == "enumerate":
            return cmd_enumerate(args, out)
        if args.command == "count":
            return cmd_count(args, out)
        if args.command == "verify":
            return cmd_list(out) if args.list else cmd_verify(args, out)
        return cmd_apply(args, out)
    except (UsageError, ParseError, MapError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
