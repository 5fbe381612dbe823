import pytest

from rootedmaps.codec import ParseError, decode, decode_stream, encode, encode_stream
from rootedmaps.core import Mark
from rootedmaps.enumerate import enumerate_maps


def test_vertex_map_round_trip(vertex_map):
    text = encode(vertex_map, [Mark.vertex(None)])
    assert "root -" in text
    assert decode(text) == (vertex_map, [Mark.vertex(None)])


def test_loop_with_discovery_round_trip(loop_map):
    text = encode(loop_map, [Mark.discovery(0)])
    assert text == "map v1\nedges 1\nroot 0\nsigma 1 0\nmark discovery 0\n"
    assert decode(text) == (loop_map, [Mark.discovery(0)])


def test_comments_and_blank_lines(loop_map):
    text = "# a loop\n\nmap v1   # header\nedges 1\nroot 0\nsigma 1 0\n"
    assert decode(text) == (loop_map, [])


def test_stream_round_trip():
    items = [(m, []) for n in range(4) for m in enumerate_maps(n)]
    assert decode_stream(encode_stream(items)) == items


@pytest.mark.parametrize(
    "text, line",
    [
        ("map v1\nedges 1\nroot 0\nsigma 1\n", 4),
        ("map v2\nedges 1\n", 1),
        ("map v1\nedges x\n", 2),
        ("map v1\nedges 1\nroot 0\n", 4),
        ("map v1\nedges 1\nroot -\nsigma 1 0\n", 3),
        ("map v1\nedges 1\nroot 0\nsigma 1 0\nmark colour 1\n", 5),
        ("map v1\nedges 1\nroot 0\nsigma 1 0\nmark discovery 3\n", 5),
        ("edges 1\n", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        decode(text)
    assert info.value.line == line


def test_sigma_length_error_mentions_count():
    with pytest.raises(ParseError, match="sigma needs 2 entries"):
        decode("map v1\nedges 1\nroot 0\nsigma 1\n")


def test_decode_wants_exactly_one(loop_map):
    with pytest.raises(ParseError):
        decode(encode(loop_map) * 2)
