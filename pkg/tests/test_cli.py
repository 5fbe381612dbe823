import io
import json
import subprocess
import sys

import pytest

from rootedmaps.cli import run
from rootedmaps.codec import decode, decode_stream, encode
from rootedmaps.core import VERTEX_MAP, Mark

LOOP = "map v1\nedges 1\nroot 0\nsigma 1 0\nmark discovery 0\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_count_planar_two_edges():
    assert call("count", "--family", "maps", "--edges", "2", "--genus", "0", "--method", "enum") == (0, "9\n", "")


@pytest.mark.parametrize("n", range(0, 6))
@pytest.mark.parametrize("group", ["none", "faces", "genus", "faces-genus"])
def test_methods_agree(n, group):
    base = ("count", "--edges", str(n), "--group-by", group, "--json")
    _, enum, _ = call(*base, "--method", "enum")
    _, rec, _ = call(*base, "--method", "recurrence")
    a, b = json.loads(enum), json.loads(rec)
    assert a.pop("method") == "enum" and b.pop("method") == "recurrence"
    assert a == b


def test_cubic_methods_agree():
    for n in (3, 6, 9):
        _, enum, _ = call("count", "--family", "cubic", "--edges", str(n), "--group-by", "genus")
        _, rec, _ = call("count", "--family", "cubic", "--edges", str(n), "--group-by", "genus", "--method", "recurrence")
        assert enum == rec


def test_recurrence_refuses_precubic():
    code, _, err = call("count", "--family", "precubic", "--edges", "3", "--method", "recurrence")
    assert code == 2 and "precubic" in err


def test_verify_json_all_ok():
    code, out, _ = call("verify", "--identity", "cc-planar", "--max-edges", "5", "--json")
    reports = json.loads(out)
    assert code == 0 and reports and all(r["ok"] for r in reports)


def test_verify_failure_exits_one_with_counterexample():
    code, out, _ = call("verify", "--identity", "calc-sum-printed", "--max-edges", "3")
    assert code == 1
    witness = out[out.index("map v1"):]
    m, _ = decode(witness)
    assert m.n_edges == 1


def test_verify_output_is_deterministic():
    a = call("verify", "--identity", "remy", "--max-edges", "4", "--json")
    b = call("verify", "--identity", "remy", "--max-edges", "4", "--json")
    assert a == b


def test_verify_list():
    code, out, _ = call("verify", "--list")
    assert code == 0 and "degree-remy\t" in out and "known to fail" in out


def test_unknown_identity_is_usage_error():
    assert call("verify", "--identity", "nope")[0] == 2


def test_budget_exhaustion_exits_nonzero():
    code, _, err = call("count", "--edges", "5", "--max-instances", "10")
    assert code == 1 and "budget" in err


def test_enumerate_stream():
    code, out, _ = call("enumerate", "--edges", "2", "--genus", "0")
    assert code == 0 and len(decode_stream(out)) == 9


def test_enumerate_json():
    _, out, _ = call("enumerate", "--edges", "1", "--json")
    rows = json.loads(out)
    assert sorted(tuple(r["sigma"]) for r in rows) == [(0, 1), (1, 0)]
    assert all(r["edges"] == 1 and r["root"] == 0 for r in rows)


def test_apply_cut_slide_and_back(tmp_path):
    src = tmp_path / "loop.map"
    src.write_text(LOOP)
    code, out, _ = call("apply", "--op", "cut-slide", "--in", str(src), "--out", str(tmp_path / "part"))
    assert code == 0
    first, second = tmp_path / "part1.map", tmp_path / "part2.map"
    assert decode(first.read_text()) == (VERTEX_MAP, [Mark.vertex(None)])
    assert decode(second.read_text())[1][0].kind.value == "leaf"
    code, out, _ = call("apply", "--op", "cut-slide-inv", "--in", str(first), "--in2", str(second))
    assert code == 0 and out == LOOP


def test_apply_remy_round_trip(tmp_path):
    src = tmp_path / "edge.map"
    src.write_text("map v1\nedges 1\nroot 0\nsigma 0 1\nmark vertex 0\n")
    code, out, _ = call("apply", "--op", "remy", "--in", str(src))
    assert code == 0 and "# remy node-contraction" in out
    mid = tmp_path / "mid.map"
    mid.write_text(out)
    code, back, _ = call("apply", "--op", "remy-inv", "--in", str(mid), "--case", "node-contraction")
    assert code == 0 and back == src.read_text()
    assert call("apply", "--op", "remy-inv", "--in", str(mid))[0] == 2


def test_apply_remy_pair(tmp_path):
    src = tmp_path / "loop.map"
    src.write_text("map v1\nedges 1\nroot 0\nsigma 1 0\nmark vertex 0\n")
    _, out, _ = call("apply", "--op", "remy", "--in", str(src))
    mid = tmp_path / "pair.map"
    mid.write_text(out)
    assert len(decode_stream(out)) == 2
    assert call("apply", "--op", "remy-inv", "--in", str(mid))[1] == src.read_text()


def test_apply_leaf_ops(tmp_path):
    src = tmp_path / "edge.map"
    src.write_text("map v1\nedges 1\nroot 0\nsigma 0 1\nmark leaf 1\n")
    _, out, _ = call("apply", "--op", "leaf-retract", "--in", str(src))
    assert out == encode(VERTEX_MAP, [Mark.corner(None)])
    mid = tmp_path / "corner.map"
    mid.write_text(out)
    assert call("apply", "--op", "leaf-expand", "--in", str(mid))[1] == src.read_text()


def test_apply_explore_json(tmp_path):
    src = tmp_path / "loop.map"
    src.write_text(LOOP)
    code, out, _ = call("apply", "--op", "explore", "--in", str(src))
    assert code == 0 and len(json.loads(out)["discoveries"]) == 1


def test_apply_reports_parse_errors(tmp_path):
    src = tmp_path / "bad.map"
    src.write_text("map v1\nedges 1\nroot 0\nsigma 1\n")
    code, _, err = call("apply", "--op", "explore", "--in", str(src))
    assert code == 2 and "line 4" in err


def test_apply_needs_the_right_mark(tmp_path):
    src = tmp_path / "loop.map"
    src.write_text("map v1\nedges 1\nroot 0\nsigma 1 0\n")
    assert call("apply", "--op", "cut-slide", "--in", str(src))[0] == 2


def test_usage_errors():
    assert call()[0] == 2
    assert call("count", "--edges", "-3")[0] == 2
    assert call("frobnicate")[0] == 2


def test_cache_flag_writes_file(tmp_path):
    path = tmp_path / "c.json"
    assert call("count", "--edges", "3", "--cache", str(path))[1] == "74\n"
    assert json.loads(path.read_text())["entries"]["maps/3"]
    assert call("count", "--edges", "3", "--cache", str(path))[1] == "74\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rootedmaps", "count", "--edges", "3", "--genus", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "54\n"
