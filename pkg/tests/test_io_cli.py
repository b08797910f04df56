import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import upbkit.families as fam
from upbkit.cli import main
from upbkit.families import TS_3X5, TU_3X5, build
from upbkit.io import (ParseError, read_stateset, read_structure, stateset_from_json, stateset_to_json,
                       structure_from_json, structure_to_json, write_json)
from upbkit.render import render_ascii, render_svg
from upbkit.states import ProductState, StateSet
from upbkit.tiles import TileStructure, enumerate_small_structures


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# --- file formats -----------------------------------------------------------------

def test_structure_roundtrip(tmp_path):
    for s in [TS_3X5, TU_3X5, build("tiles_332").structure, build("ddd", 6).structure]:
        p = tmp_path / "s.json"
        write_json(structure_to_json(s), p)
        assert read_structure(p) == s


@pytest.mark.parametrize("name,d", [("ex_3x5", None), ("tiles_332", None), ("dd2", 5), ("ddd", 6), ("v2_422", None)])
def test_stateset_roundtrip_bit_equal(tmp_path, name, d):
    S = build(name, d).states
    p = tmp_path / "x.json"
    write_json(stateset_to_json(S), p)
    T = read_stateset(p)
    assert T.dims == S.dims and T.provenance == S.provenance
    for x, y in zip(S.states, T.states):
        assert x.label == y.label
        for a, b in zip(x.locals, y.locals):
            assert np.array_equal(a, b)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6)), min_size=3, max_size=3)
       .filter(lambda v: any(a or b for a, b in v)))
def test_amplitudes_survive_json_text(v):
    loc = np.array([complex(a, b) for a, b in v])
    S = StateSet((3, 1), [ProductState((loc, np.ones(1, dtype=complex)))])
    T = stateset_from_json(json.loads(json.dumps(stateset_to_json(S))))
    assert np.array_equal(T.states[0].locals[0], loc)


@pytest.mark.parametrize("obj", [{}, {"dims": [2, 2]}, {"dims": "x", "tiles": []},
                                 {"dims": [2, 2], "tiles": [{"axes": [[0, 1], [0, 1]]}, {"axes": [[0], [0]]}]}])
def test_bad_structure_files(obj):
    with pytest.raises(ParseError):
        structure_from_json(obj)


@pytest.mark.parametrize("obj", [{}, {"dims": [2, 2], "states": [{"locals": [[[1, 0]], [[1, 0]]]}]},
                                 {"dims": [2], "states": [{"locals": [["a"]]}]}])
def test_bad_stateset_files(obj):
    with pytest.raises(ParseError):
        stateset_from_json(obj)


# --- generate -------------------------------------------------------------------------

def test_generate_ddd(tmp_path, capsys):
    out = tmp_path / "ddd.json"
    code, text, _ = run(capsys, "generate", "--family", "ddd", "--d", 6, "--out", out)
    assert code == 0 and "109 states" in text
    assert len(read_stateset(out)) == 109
    assert read_structure(tmp_path / "ddd.tiles.json").ntiles == 108


def test_generate_3x5(tmp_path, capsys):
    code, text, _ = run(capsys, "generate", "--family", "ex_3x5", "--out", tmp_path / "e.json")
    assert code == 0 and len(read_stateset(tmp_path / "e.json")) == 10


@pytest.mark.parametrize("argv", [("--family", "ddd", "--d", 5), ("--family", "dd2"), ("--family", "zzz"),
                                  ("--family", "tiles_332", "--d", 3)])
def test_generate_usage_errors(tmp_path, capsys, argv):
    code, _, _ = run(capsys, "generate", *argv, "--out", tmp_path / "x.json")
    assert code == 2


# --- tiles-check -------------------------------------------------------------------------

def write_structure(tmp_path, s, name="s.json"):
    p = tmp_path / name
    write_json(structure_to_json(s), p)
    return p


def test_tiles_check_ts(tmp_path, capsys):
    code, text, _ = run(capsys, "tiles-check", write_structure(tmp_path, TS_3X5))
    rep = json.loads(text)
    assert code == 0 and rep["valid"]
    assert rep["u_tile"]["is_u_tile"] is False and rep["u_tile"]["region"] == [4, 5]
    assert rep["quasi_u"]["found"] is True


def test_tiles_check_tu(tmp_path, capsys):
    code, text, _ = run(capsys, "tiles-check", write_structure(tmp_path, TU_3X5))
    assert code == 0 and json.loads(text)["u_tile"]["is_u_tile"] is True


def test_tiles_check_3d(tmp_path, capsys):
    code, text, _ = run(capsys, "tiles-check", write_structure(tmp_path, build("tiles_332").structure))
    rep = json.loads(text)
    assert code == 0 and rep["u_tile"]["is_u_tile"] is True
    assert rep["bipartitions"]["A|BC"]["quasi_u"]["found"] is True
    assert rep["bipartitions"]["C|AB"]["quasi_u"]["found"] is False


def test_tiles_check_invalid_and_malformed(tmp_path, capsys):
    bad = TileStructure.from_axes((2, 2), [[(0,), (0, 1)]])
    code, text, _ = run(capsys, "tiles-check", write_structure(tmp_path, bad))
    assert code == 1 and json.loads(text)["violations"][0]["kind"] == "uncovered"
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(capsys, "tiles-check", junk)[0] == 2
    assert run(capsys, "tiles-check", tmp_path / "missing.json")[0] == 2


# --- classify ---------------------------------------------------------------------------

def generated(tmp_path, capsys, family, d=None):
    out = tmp_path / f"{family}.json"
    argv = ["generate", "--family", family, "--out", out] + (["--d", d] if d else [])
    assert run(capsys, *argv)[0] == 0
    return out


def verdicts(text):
    return {k: v["verdict"] for k, v in json.loads(text)["bipartitions"].items()}


def test_classify_332(tmp_path, capsys):
    p = generated(tmp_path, capsys, "tiles_332")
    code, text, _ = run(capsys, "classify", p, "--tripartite")
    assert code == 0
    assert verdicts(text) == {"A|BC": "SUCPB-certified", "B|CA": "SUCPB-certified", "C|AB": "Completable"}
    rep = json.loads(text)
    assert all(c["seed"] == 42 and c["confidence"] == "exact" for c in rep["bipartitions"].values())


def test_classify_d22_completable(tmp_path, capsys):
    p = generated(tmp_path, capsys, "d22_completable", 4)
    code, text, _ = run(capsys, "classify", p, "--tripartite")
    assert code == 0 and set(verdicts(text).values()) == {"Completable"}


def test_classify_bipartite_file(tmp_path, capsys):
    p = generated(tmp_path, capsys, "ex_3x5")
    out = tmp_path / "rep.json"
    code, text, _ = run(capsys, "classify", p, "--out", out)
    rep = json.loads(out.read_text())
    assert code == 0 and rep == json.loads(text)
    assert rep["verdict"] == "SUCPB-certified" and rep["evidence"]["product_span"]["dim"] == 1


def test_classify_usage_errors(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    write_json({"dims": [2, 2], "states": []}, empty)
    assert run(capsys, "classify", empty)[0] == 2
    p = generated(tmp_path, capsys, "ex_3x5")
    assert run(capsys, "classify", p, "--tripartite")[0] == 2
    q = generated(tmp_path, capsys, "tiles_332")
    assert run(capsys, "classify", q)[0] == 2
    overlap = tmp_path / "overlap.json"
    S = StateSet((2, 2), [ProductState((np.array([1, 0]), np.array([1, 0]))),
                          ProductState((np.array([1, 0]), np.array([1, 1])))])
    write_json(stateset_to_json(S), overlap)
    assert run(capsys, "classify", overlap)[0] == 2


def test_classify_is_byte_identical(tmp_path, capsys):
    p = generated(tmp_path, capsys, "v2_422")
    a = run(capsys, "classify", p, "--tripartite")[1]
    b = run(capsys, "classify", p, "--tripartite")[1]
    assert a == b


def test_classify_seed_changes_nothing_but_the_seed(tmp_path, capsys):
    p = generated(tmp_path, capsys, "tiles_332")
    a = run(capsys, "classify", p, "--tripartite", "--seed", 42)[1]
    b = run(capsys, "classify", p, "--tripartite", "--seed", 7)[1]
    assert verdicts(a) == verdicts(b)
    assert {c["seed"] for c in json.loads(b)["bipartitions"].values()} == {7}


# --- render ---------------------------------------------------------------------------

def test_render_ts_ascii():
    text = render_ascii(TS_3X5)
    for i in range(1, 7):
        assert f"t{i}" in text
    assert render_ascii(TS_3X5) == text


def test_render_single_cell():
    s = TileStructure.from_axes((1, 1), [[(0,), (0,)]])
    text = render_ascii(s)
    assert "t1" in text and render_ascii(s, labels=False).count("\n") <= 3


def test_render_3d_side_by_side():
    text = render_ascii(build("tiles_332").structure)
    rows = [r for r in text.splitlines() if r.strip()]
    # two slices on the same rows, separated by a gap
    assert all("    " in r.strip() for r in rows[:3])


def test_render_svg_is_well_formed():
    for s in (TS_3X5, build("tiles_332").structure):
        root = ET.fromstring(render_svg(s))
        assert root.tag.endswith("svg")
        rects = [e for e in root.iter() if e.tag.endswith("rect")]
        assert len(rects) >= s.ntiles


def test_render_cli(tmp_path, capsys):
    p = write_structure(tmp_path, TS_3X5)
    code, text, _ = run(capsys, "render", p)
    assert code == 0 and text == render_ascii(TS_3X5)
    out = tmp_path / "ts.svg"
    assert run(capsys, "render", p, "--format", "svg", "--out", out)[0] == 0
    ET.parse(out)
    junk = tmp_path / "junk.json"
    junk.write_text("[]")
    assert run(capsys, "render", junk)[0] == 2


def test_render_enumerated_structures_stay_consistent():
    for s in list(enumerate_small_structures((2, 3), 3))[:10]:
        assert render_ascii(s) == render_ascii(s)


# --- reproduction suite ----------------------------------------------------------------

def test_paper_suite_passes(capsys):
    code, text, _ = run(capsys, "paper-suite")
    assert code == 0 and "10/10 checks passed" in text
    assert text.count("[PASS]") == 10


def test_paper_suite_catches_broken_ddd(monkeypatch, capsys):
    real = fam._BUILDERS["ddd"]

    def broken(d):
        b = real(d)
        # drop one tile state, so one (k, i) pair has d - 4 states
        b.states.states.pop(0)
        b.tile_of_state.pop(0)
        return b

    monkeypatch.setitem(fam._BUILDERS, "ddd", broken)
    code, text, _ = run(capsys, "paper-suite", "--only", 7)
    assert code == 1 and "[FAIL]" in text


def test_paper_suite_seed_override(capsys):
    a = run(capsys, "paper-suite", "--only", 1, 3, 5, 6)
    b = run(capsys, "paper-suite", "--only", 1, 3, 5, 6, "--seed", 7)
    strip = lambda t: [line.split(" (")[0] for line in t.splitlines()]
    assert a[0] == b[0] == 0
    assert [l[:6] for l in strip(a[1])] == [l[:6] for l in strip(b[1])]


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "upbkit", "generate", "--family", "ex_3x5", "--out",
                        str(tmp_path / "e.json")], capture_output=True, text=True)
    assert r.returncode == 0 and "10 states" in r.stdout
