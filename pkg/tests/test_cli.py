from __future__ import annotations

import json

import pytest

from sbbcodes.bitmatrix import BitMatrix
from sbbcodes.cli import (
    EXIT_MISMATCH,
    EXIT_NO_STABILIZERS,
    EXIT_OK,
    EXIT_PARSE,
    SpecParseError,
    bundled_spec_names,
    bundled_spec_path,
    load_spec,
    main,
    parse_spec_text,
    reduce_spec,
    verify_spec,
    witness_spec,
)
from sbbcodes.torus import TwistedTorus

GUIDING_TEXT = """\
# guiding example
name = guide
f1 = x^2
g1 = y^2
h1 = x + x^2*y
f2 = 1 + y^2
g2 = x + y
h2 = 0
torus = 5,5,0 [[75,10,5]]
distance_budget = 8
"""


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("name = a\nf1 = 1 + + x\n", 2, 10),
        ("bogus = 3\n", 1, 1),
        ("gx1 = 1, x\n", 1, 7),
        ("torus = 3,3,0 [[27,6]]\n", 1, 15),
        ("window = abc\n", 1, 10),
    ],
)
def test_parse_errors_locate_problem(text, line, column):
    with pytest.raises(SpecParseError) as err:
        parse_spec_text(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_format_is_canonical():
    spec = parse_spec_text(GUIDING_TEXT)
    once = spec.format()
    assert parse_spec_text(once).format() == once
    assert "torus = 5,5,0 [[75,10,5]]" in once
    assert spec.tori[0].torus == TwistedTorus(5, 5, 0)
    assert spec.tori[0].expected == (75, 10, 5)


def test_bundled_specs_parse():
    names = bundled_spec_names()
    for required in ("27_6_3", "75_10_5", "108_12_6", "surface", "proper_ideal", "search_w3"):
        assert required in names
    for name in names:
        spec = load_spec(bundled_spec_path(name))
        assert parse_spec_text(spec.format()).format() == spec.format()


def test_verify_guiding():
    res = verify_spec(parse_spec_text(GUIDING_TEXT))
    assert res.exit_code == EXIT_OK
    rep = res.reports[0]
    assert (rep["n"], rep["k"], rep["d"]) == (75, 10, 5)
    assert "[[75,10,5]]" in res.text


def test_verify_mismatch_exit_code(tmp_path):
    path = tmp_path / "wrong.spec"
    path.write_text(GUIDING_TEXT.replace("[[75,10,5]]", "[[75,10,6]]"))
    assert main(["verify", str(path)]) == EXIT_MISMATCH


def test_nonzero_determinant_exit_code(tmp_path):
    path = tmp_path / "det.spec"
    path.write_text(GUIDING_TEXT.replace("g2 = x + y", "g2 = y"))
    assert main(["verify", str(path)]) == EXIT_NO_STABILIZERS


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.spec"
    path.write_text("f1 = 1 + + x\n")
    assert main(["verify", str(path)]) == EXIT_PARSE
    assert "line 1, column 10" in capsys.readouterr().err


def test_verify_writes_report(tmp_path):
    code = main(["verify", "bundled:27_6_3", "--out", str(tmp_path)])
    assert code == EXIT_OK
    data = json.loads((tmp_path / "verify_report.json").read_text())
    assert data["exit_code"] == 0
    assert data["reports"][0]["k"] == 6


def test_torus_override():
    spec = load_spec(bundled_spec_path("surface"))
    res = verify_spec(spec, tori=[TwistedTorus(3, 3, 0)])
    assert [(r["n"], r["k"], r["d"]) for r in res.reports] == [(27, 2, 3)]


def test_export_guiding(tmp_path):
    assert main(["export", "bundled:75_10_5", "--out", str(tmp_path)]) == EXIT_OK
    gx = BitMatrix.from_alist((tmp_path / "75_10_5_5_5_0_H_GX.alist").read_text())
    sx = BitMatrix.from_alist((tmp_path / "75_10_5_5_5_0_H_SX.alist").read_text())
    assert gx.shape == (50, 75) and set(gx.row_weights()) == {4}
    assert sx.shape == (25, 75) and set(sx.row_weights()) == {12}
    dense = BitMatrix.from_text((tmp_path / "75_10_5_5_5_0_H_GX.txt").read_text())
    assert dense == gx
    report = json.loads((tmp_path / "75_10_5_5_5_0_report.json").read_text())
    assert report["counts"]["k"] == 10


def test_reduce_guiding():
    res = reduce_spec(load_spec(bundled_spec_path("75_10_5")))
    assert res.exit_code == EXIT_OK
    rep = res.reports[0]
    assert (rep["n"], rep["k"], rep["d"]) == (50, 10, 5)


def test_witness_proper_ideal():
    res = witness_spec(load_spec(bundled_spec_path("proper_ideal")))
    rep = res.reports[0]
    assert rep["unit"] is False
    assert rep["excess"] >= 1
    assert all(v % 2 == 1 for v in rep["torus"][:2])


def test_witness_unit_ideal():
    res = witness_spec(load_spec(bundled_spec_path("75_10_5")))
    assert res.reports[0]["unit"] is True


def test_search_command_partial(tmp_path, capsys):
    path = tmp_path / "search.spec"
    path.write_text("window = 1\ndistance_budget = 4\ntorus = 3,3,0\n")
    assert main(["search", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].split()[:4] == ["code", "torus", "kd/n", "kd^2/n"]
    stats = json.loads(out.splitlines()[-1])
    assert stats["n_second"] == 465
