import io
import json
import re
import subprocess
import sys

import pytest

from macfaces.cli import run
from macfaces.counting import count_total
from macfaces.facelattice import FaceLabel, merge_labels, parse_label
from macfaces.fixtures import fixture_path


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_count_all_dims():
    assert call("count", "--users", "3") == (0, "D=0:16 D=1:24 D=2:10 D=3:1\n")


def test_count_one_dim_json():
    code, text = call("count", "--users", "4", "--dim", "2", "--json")
    assert code == 0 and json.loads(text)["count"] == 84


def test_count_table_csv(tmp_path):
    out = tmp_path / "table.csv"
    code, _ = call("count", "--table", "20", "--csv", str(out))
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "M,D,N_total,N_dominant,N_front,N_back"
    assert len(rows) == 1 + sum(M + 1 for M in range(1, 21))
    assert rows[-1] == "20,20,1,0,1,0"


@pytest.mark.parametrize("M", range(1, 7))
def test_faces_line_count_matches_count(M):
    for D in range(M + 1):
        _, faces = call("faces", "--users", str(M), "--dim", str(D))
        _, count = call("count", "--users", str(M), "--dim", str(D))
        assert len(faces.splitlines()) == int(count)


def test_faces_json_round_trips():
    code, text = call("faces", "--users", "3", "--json")
    assert code == 0
    rows = json.loads(text)
    assert len(rows) == 51
    for row in rows:
        lab = parse_label(row["label"], 3)
        assert lab == FaceLabel(3, tuple(map(frozenset, row["chain"])), frozenset(row["zeros"]))


def test_faces_from_channel_file():
    code, text = call("faces", str(fixture_path("adder2")), "--dim", "0")
    assert code == 0 and len(text.splitlines()) == 5


def test_faces_degenerate_channel():
    code, text = call("faces", "xor2")
    assert code == 1 and "condition 1 violated" in text


def test_locate_vertex():
    code, text = call("locate", str(fixture_path("adder2")), "--rate", "1.0,0.5")
    assert code == 0
    assert "label: F({1,2}>{1}|)" in text
    assert "order: [{2},{1}]" in text


def test_locate_json():
    code, text = call("locate", "adder2", "--rate", "0.000000000,1.000000000", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["label"] == "F({2}|{1})"
    assert doc["decoding"] == {"groups": [[2]], "skipped": [1]}
    assert parse_label(doc["label"], 2) == FaceLabel.of(2, {2}, zeros={1})


def test_locate_not_achievable():
    code, text = call("locate", "adder2", "--rate", "1.5,0.5")
    assert code == 1 and "NotAchievable" in text and "R({1})" in text


def test_locate_wrong_length():
    code, _ = call("locate", "adder2", "--rate", "1.0")
    assert code == 2


def test_check_xor():
    code, text = call("check", str(fixture_path("xor2")))
    assert code == 1
    assert "condition 1 violated: I(X_{1};Y)=0" in text


def test_check_parallel():
    code, text = call("check", "parallel2", "--json")
    doc = json.loads(text)
    assert code == 1 and doc["nondegenerate"] is False
    assert {v["condition"] for v in doc["violations"]} == {2}


@pytest.mark.parametrize("name", ["adder2", "adder3", "adder3_biased"])
def test_check_adders(name):
    assert call("check", name) == (0, "non-degenerate\n")


def test_check_margin_flag():
    code, _ = call("check", "adder2", "--margin", "0.75")
    assert code == 1


def test_info():
    code, text = call("info", "adder2")
    assert code == 0
    assert text.splitlines() == [
        "I(X_{1};Y|X_{2}) = 1.000000",
        "I(X_{2};Y|X_{1}) = 1.000000",
        "I(X_{1,2};Y) = 1.500000",
    ]


def test_vertices():
    code, text = call("vertices", "adder2")
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 5
    assert "(1.000000, 0.500000)  F({1,2}>{1}|)" in lines


def test_vertices_json_of_degenerate_channel():
    code, text = call("vertices", "xor2", "--json")
    doc = json.loads(text)
    assert code == 0 and len(doc) == 3 and all(v["label"] is None for v in doc)


@pytest.mark.parametrize("name", ["adder2", "adder3", "adder3_biased"])
def test_verify_fixtures(name):
    code, text = call("verify", name)
    assert code == 0 and text.rstrip().endswith("OK")


def test_verify_json():
    code, text = call("verify", "adder2", "--json")
    assert code == 0 and json.loads(text)["ok"] is True


def test_verify_degenerate():
    assert call("verify", "parallel2")[0] == 1


def test_lattice_dot(tmp_path):
    out = tmp_path / "l.dot"
    code, _ = call("lattice", "adder3_biased", "--dot", str(out))
    assert code == 0
    dot = out.read_text()
    assert dot.startswith("digraph") and "rankdir=BT" in dot
    nodes = dict(re.findall(r'(f\d+) \[label="([^"]+)"\]', dot))
    assert len(nodes) == 51
    labels = {k: parse_label(v, 3) for k, v in nodes.items()}
    edges = re.findall(r"(f\d+) -> (f\d+);", dot)
    for lo, hi in edges:
        assert merge_labels(labels[hi], labels[lo]) == labels[lo]
    # every edge of a 3-polytope lattice: each face of dim d<3 covered; simple polytope
    # gives 16*3 + 24*2 + 10*1 covering pairs
    assert len(edges) == 16 * 3 + 24 * 2 + 10


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["count", "--users", "3", "--nope"],
        ["locate", "adder2", "--rate", "a,b"],
        ["locate", "no_such_file.json", "--rate", "1,1"],
        ["count"],
        ["faces"],
        ["count", "--users", "3", "--dim", "7"],
        ["faces", "--users", "9"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, io.StringIO()) == 2


def test_malformed_channel_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"users": 1, "input_sizes": [2], "output_size": 2,
                               "input_pmfs": [[0.5, 0.6]], "transition": [[1, 0], [0, 1]]}))
    assert run(["info", str(bad)], io.StringIO()) == 2
    assert "input_pmfs" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "macfaces.cli", "count", "--users", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "D=0:5 D=1:5 D=2:1\n"


def test_count_matches_library():
    _, text = call("count", "--users", "5", "--json")
    assert json.loads(text)["N_total"] == [count_total(5, d) for d in range(6)]
