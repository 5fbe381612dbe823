"""Line-oriented text format for rooted maps with marks.

::

    map v1
    edges 2
    root 0
    sigma 1 2 3 0
    mark discovery 1

``#`` starts a comment.  ``root -`` and ``mark <kind> -`` are only legal for
the vertex map, which also omits the ``sigma`` line.  A stream is a plain
concatenation of such blocks; each block starts at its ``map v1`` line.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .core import MapError, Mark, MarkKind, RootedMap, build_map, validate_mark

HEADER = "map v1"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def encode(m: RootedMap, marks: Sequence[Mark] = ()) -> str:
    lines = [HEADER, f"edges {m.n_edges}"]
    if m.n_edges == 0:
        lines.append("root -")
    else:
        lines.append(f"root {m.root_dart}")
        lines.append("sigma " + " ".join(map(str, m.sigma)))
    for mark in marks:
        value = "-" if mark.value is None else str(mark.value)
        lines.append(f"mark {mark.kind.value} {value}")
    return "\n".join(lines) + "\n"


def encode_stream(items: Iterable[tuple[RootedMap, Sequence[Mark]]]) -> str:
    return "".join(encode(m, marks) for m, marks in items)


def _tokens(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield (line number, [(column, token), ...]) for non-empty lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _int(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"expected an integer for {what}, got {s!r}", lineno, col) from None


def _parse_block(lines: list[tuple[int, list[tuple[int, str]]]]) -> tuple[RootedMap, list[Mark]]:
    it = iter(lines)

    def expect(keyword: str):
        try:
            lineno, toks = next(it)
        except StopIteration:
            last = lines[-1][0] if lines else 1
            raise ParseError(f"missing '{keyword}' line", last + 1) from None
        if toks[0][1] != keyword:
            raise ParseError(f"expected '{keyword}', got {toks[0][1]!r}", lineno, toks[0][0])
        return lineno, toks

    lineno, toks = expect("map")
    if len(toks) != 2 or toks[1][1] != "v1":
        raise ParseError("unsupported header, expected 'map v1'", lineno, toks[-1][0])
    lineno, toks = expect("edges")
    if len(toks) != 2:
        raise ParseError("'edges' takes one integer", lineno, toks[0][0])
    n = _int(toks[1], lineno, "edges")
    if n < 0:
        raise ParseError("edge count must be non-negative", lineno, toks[1][0])
    lineno, toks = expect("root")
    if len(toks) != 2:
        raise ParseError("'root' takes one value", lineno, toks[0][0])
    if toks[1][1] == "-":
        if n != 0:
            raise ParseError("'root -' is only allowed for the vertex map", lineno, toks[1][0])
        root = None
    else:
        root = _int(toks[1], lineno, "root")
    sigma: list[int] = []
    if n > 0:
        lineno, toks = expect("sigma")
        if len(toks) - 1 != 2 * n:
            raise ParseError(f"sigma needs {2 * n} entries, got {len(toks) - 1}", lineno, toks[0][0])
        sigma = [_int(t, lineno, "sigma") for t in toks[1:]]
    try:
        m = build_map(n, sigma, root)
    except MapError as exc:
        raise ParseError(str(exc), lineno, 1) from None
    marks = []
    for lineno, toks in it:
        if toks[0][1] != "mark":
            raise ParseError(f"unexpected {toks[0][1]!r}", lineno, toks[0][0])
        if len(toks) != 3:
            raise ParseError("'mark' takes a kind and a value", lineno, toks[0][0])
        try:
            kind = MarkKind(toks[1][1])
        except ValueError:
            raise ParseError(f"unknown mark kind {toks[1][1]!r}", lineno, toks[1][0]) from None
        if toks[2][1] == "-":
            if n != 0:
                raise ParseError("'-' marks are only allowed on the vertex map", lineno, toks[2][0])
            value = None
        else:
            value = _int(toks[2], lineno, "mark")
        mark = Mark(kind, value)
        try:
            validate_mark(m, mark)
        except MapError as exc:
            raise ParseError(str(exc), lineno, toks[2][0]) from None
        marks.append(mark)
    return m, marks


def decode_stream(text: str) -> list[tuple[RootedMap, list[Mark]]]:
    blocks: list[list] = []
    for lineno, toks in _tokens(text):
        if toks[0][1] == "map":
            blocks.append([])
        elif not blocks:
            raise ParseError("content before the first 'map v1' line", lineno, toks[0][0])
        blocks[-1].append((lineno, toks))
    return [_parse_block(b) for b in blocks]


def decode(text: str) -> tuple[RootedMap, list[Mark]]:
    items = decode_stream(text)
    if len(items) != 1:
        raise ParseError(f"expected exactly one map, found {len(items)}", 1)
    return items[0]
