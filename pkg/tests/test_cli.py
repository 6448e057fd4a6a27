import json

from pipedreams.cli import main
from pipedreams.pipedream import PipeDream
from pipedreams.render import CONTACT_GLYPH, CROSS_GLYPH, OUTSIDE_GLYPH, ascii, ascii_shape, svg
from pipedreams.shape import AlternatingShape

SHAPE_A = json.dumps({"n": 2, "start": "SS", "t": 0, "end": "EE"})
STAIRCASE_N5 = json.dumps({"n": 5, "start": "SSSSE", "t": 1, "end": "EESSS"})
FIG4 = PipeDream(AlternatingShape(5, "SSSSS", 1, "EESSS"), {(0, -1), (1, -2), (1, -1), (2, -2)})
FIG5_SHAPE = json.dumps({"n": 3, "start": "SEE", "t": 2, "end": "EES"})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_shape_validate(capsys):
    code, out, _ = run(capsys, "shape", "validate", SHAPE_A)
    assert code == 0
    rec = json.loads(out)
    assert rec["valid"] and rec["word"] == [1] and rec["complete"]
    assert sorted(map(tuple, rec["cells"])) == [(0, -2), (0, -1), (1, -1)]
    code, out, _ = run(capsys, "shape", "validate", json.dumps({"n": 2, "start": "ES", "t": 1, "end": "SE"}))
    assert code == 2 and not json.loads(out)["valid"]


def test_shape_enumerate(capsys):
    code, out, _ = run(capsys, "shape", "enumerate", "--n", "2", "--max-t", "0")
    assert code == 0 and len(json.loads(out)) == 4


def test_pd_enumerate(capsys):
    code, out, _ = run(capsys, "pd", "enumerate", SHAPE_A, "--omega", "21")
    assert code == 0 and len(json.loads(out)) == 1
    code, out, _ = run(capsys, "pd", "enumerate", SHAPE_A, "--omega", "12", "--strongly-acyclic")
    assert code == 0 and len(json.loads(out)) == 1


def test_pd_enumerate_errors(capsys):
    code, _, err = run(capsys, "pd", "enumerate", '{"n": 2, "start"', "--omega", "12")
    assert code == 2 and "invalid shape" in err
    bad = json.dumps({"n": 3, "start": "SSS", "t": 0, "end": "ESS"})
    code, _, err = run(capsys, "pd", "enumerate", bad, "--omega", "321")
    assert code == 2 and "not sortable" in err


def test_cell_cap(capsys, monkeypatch):
    monkeypatch.setenv("PIPEDREAM_MAX_CELLS", "3")
    code, _, err = run(capsys, "pd", "enumerate", STAIRCASE_N5, "--omega", "23145")
    assert code == 2 and "PIPEDREAM_MAX_CELLS" in err


def test_pd_insert_both(capsys):
    code, out, _ = run(capsys, "pd", "insert", STAIRCASE_N5, "--omega", "23145", "--pi", "21345", "--algo", "both", "--trace")
    assert code == 0
    rec = json.loads(out)
    assert rec["trace"][0] == "contact(4,5)" and rec["trace"][-1] == "cross(1,3)"
    Q = PipeDream.from_dict({k: rec[k] for k in ("shape", "cells")})
    assert len(Q.crosses) == 2


def test_pd_insert_pi_equals_omega(capsys):
    code, _, _ = run(capsys, "pd", "insert", STAIRCASE_N5, "--omega", "23145", "--pi", "23145", "--algo", "both")
    assert code == 0


def test_pd_insert_not_below(capsys):
    code, _, err = run(capsys, "pd", "insert", STAIRCASE_N5, "--omega", "12345", "--pi", "21345")
    assert code == 2 and "not below" in err


def test_pd_insert_ascii(capsys):
    code, out, _ = run(capsys, "pd", "insert", SHAPE_A, "--omega", "21", "--pi", "12", "--ascii")
    assert code == 0
    assert out.splitlines()[1:] == [CROSS_GLYPH + CONTACT_GLYPH, CONTACT_GLYPH + OUTSIDE_GLYPH]


def test_pd_graph(tmp_path, capsys):
    path = tmp_path / "fig4.json"
    path.write_text(FIG4.to_json())
    code, out, _ = run(capsys, "pd", "graph", str(path), "--extended")
    rec = json.loads(out)
    assert code == 0 and rec["acyclic"] is False
    code, out, _ = run(capsys, "pd", "graph", str(path))
    assert json.loads(out)["acyclic"] is True
    code, out, _ = run(capsys, "pd", "graph", str(path), "--extended", "--dot")
    assert out.startswith("digraph extended_contact")


def test_pd_graph_arcless_and_nonreduced(tmp_path, capsys):
    F = AlternatingShape(2, "SS", 0, "EE")
    Q = PipeDream(F, {(0, -1)})
    code, out, _ = run(capsys, "pd", "graph", Q.to_json(), "--dot")
    assert code == 0 and "->" not in out
    G = AlternatingShape(2, "SS", 1, "ES")
    double = PipeDream(G, {(0, -1), (1, 0)})
    code, _, err = run(capsys, "pd", "graph", double.to_json())
    assert code == 2 and "not reduced" in err


def test_pd_render(capsys):
    Q = PipeDream(AlternatingShape(2, "SS", 0, "EE"), {(0, -1)})
    code, out, _ = run(capsys, "pd", "render", Q.to_json())
    assert code == 0 and out == ascii(Q)
    code, out, _ = run(capsys, "pd", "render", Q.to_json(), "--format", "svg")
    assert out.startswith("<svg") and out.count("<polyline") == 2


def test_flip_graph_and_lattice(capsys):
    code, out, _ = run(capsys, "pd", "flip-graph", SHAPE_A, "--omega", "21")
    rec = json.loads(out)
    assert code == 0 and len(rec["nodes"]) == 1 and rec["arcs"] == []
    code, out, _ = run(capsys, "lattice", "export", FIG5_SHAPE, "--omega", "321")
    lat = json.loads(out)
    code, out, _ = run(capsys, "pd", "flip-graph", FIG5_SHAPE, "--omega", "321")
    flips = json.loads(out)
    nodes = [json.dumps(n, sort_keys=True) for n in flips["nodes"]]
    elems = [json.dumps(e["pipe_dream"], sort_keys=True) for e in lat["elements"]]
    flip_arcs = {(nodes[i], nodes[j]) for i, j in flips["arcs"]}
    hasse = {(elems[i], elems[j]) for i, j in lat["covers"]}
    assert hasse <= flip_arcs
    assert len(hasse) < len(flip_arcs)


def test_lattice_dot(capsys):
    code, out, _ = run(capsys, "lattice", "export", SHAPE_A, "--omega", "21", "--dot")
    assert code == 0 and '[label="12..21"]' in out


def test_verify_small(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--n", "2", "--suite", "all", "--out", str(out_file))
    rep = json.loads(out_file.read_text())
    assert code == 0 and rep["ok"] and rep["seconds"] < 1
    assert any(c["claim"].startswith("partition") for c in rep["claims"])


def test_verify_complete_note(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--max-t", "1", "--suite", "complete")
    rep = json.loads(out)
    assert code == 0 and rep["notes"] and "skipped" in rep["notes"][0]


def test_verify_bad_flags(capsys):
    assert run(capsys, "verify", "--n", "2", "--suite", "nope")[0] == 2
    assert run(capsys, "verify", "--n", "9")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_outputs_round_trip_and_are_deterministic(capsys):
    argv = ["pd", "enumerate", STAIRCASE_N5, "--omega", "23145"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    for rec in json.loads(first):
        assert PipeDream.from_dict(rec).to_dict() == rec


def test_ascii_glyphs():
    F = AlternatingShape(2, "SS", 0, "EE")
    Q = PipeDream(F, {(0, -1)})
    rows = ascii(Q).splitlines()
    assert rows == [CROSS_GLYPH + CONTACT_GLYPH, CONTACT_GLYPH + OUTSIDE_GLYPH]
    assert ascii_shape(F).splitlines() == ["##", "#" + OUTSIDE_GLYPH]
    assert svg(Q).count("<rect") == 3
