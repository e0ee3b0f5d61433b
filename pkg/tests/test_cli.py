import json
import math
import subprocess
import sys

import numpy as np
import pytest

from nuext.cli import (
    _matrix_from_doc,
    _matrix_to_doc,
    _witness_from_doc,
    build_parser,
    main,
    serialize_report,
)
from nuext.errors import ParseError


def write_matrix(path, m, label=None):
    doc = _matrix_to_doc(np.asarray(m, dtype=complex), label)
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(args):
    return main(list(args))


def test_matrix_document_roundtrip(rng):
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    back, label = _matrix_from_doc(_matrix_to_doc(m, "x"))
    assert label == "x"
    assert np.array_equal(back, m)  # [re, im] pairs are lossless


def test_matrix_document_rejects_bad_inputs():
    with pytest.raises(ParseError):
        _matrix_from_doc({"n": 2, "data": [[[0, 0]]]})
    with pytest.raises(ParseError):
        _matrix_from_doc({"n": 1, "data": [[[math.inf, 0]]]})
    with pytest.raises(ParseError):
        _matrix_from_doc({"n": 1, "data": [[["a", 0]]]})
    with pytest.raises(ParseError):
        _matrix_from_doc([1, 2, 3])


def test_report_roundtrip_byte_identical(tmp_path, capsys):
    p = write_matrix(tmp_path / "m.json", [[0, 2j], [0, 0]], "nilpotent")
    assert run_cli(["radius", p]) == 0
    out1 = capsys.readouterr().out
    parsed = json.loads(out1)
    assert serialize_report(parsed) == out1
    assert abs(parsed["radius"] - 1.0) <= 1e-9


def test_radius_deterministic_bytes(tmp_path):
    p = write_matrix(tmp_path / "m.json", [[0.3, 1.2 - 0.4j], [0.0, -0.7j]])
    o1, o2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(["radius", p, "--out", str(o1)]) == 0
    assert run_cli(["radius", p, "--out", str(o2)]) == 0
    assert o1.read_bytes() == o2.read_bytes()


def test_radius_diag_and_sample_gap(tmp_path, capsys):
    p = write_matrix(tmp_path / "m.json", np.diag([0.3 + 0.4j, -1.0]))
    run_cli(["radius", p])
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["radius"] - 1.0) <= 1e-9
    assert 0.0 <= doc["sample_gap"] <= 5e-3


def test_classify_exit_codes(tmp_path, capsys):
    extreme = write_matrix(tmp_path / "e.json", [[1, 1j], [1j, -1]])
    notext = write_matrix(tmp_path / "n.json", np.diag([1.0, -1.0]))
    r = 1.0 / math.sqrt(2.0)
    gap = write_matrix(tmp_path / "g.json", [[1.0, r], [-r, 0.0]])
    assert run_cli(["classify", extreme]) == 0
    assert run_cli(["classify", notext]) == 1
    assert run_cli(["classify", gap]) == 2
    capsys.readouterr()


def test_classify_embeds_witness(tmp_path, capsys):
    p = write_matrix(tmp_path / "m.json", np.diag([1.0, -1.0]))
    assert run_cli(["classify", p]) == 1
    doc = json.loads(capsys.readouterr().out)
    v = doc["verdict"]
    assert v["theorem"] == "Lemma2.4"
    assert v["verification"]["passed"] is True
    a, _ = _matrix_from_doc(v["witness"]["A"])
    assert np.allclose(a, [[1, 1j], [1j, -1]], atol=1e-12)


def test_parse_error_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(["classify", str(bad)]) == 3
    assert run_cli(["radius", str(tmp_path / "missing.json")]) == 3
    capsys.readouterr()


def test_witness_verify_pipeline(tmp_path, capsys):
    m = write_matrix(tmp_path / "m.json", np.diag([1.0, -1.0]))
    wpath = tmp_path / "w.json"
    assert run_cli(["witness", m, "--out", str(wpath)]) == 1
    capsys.readouterr()
    assert run_cli(["verify", m, str(wpath)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verification"]["passed"] is True
    # tamper: scale A by 1.1 -> must fail with nonzero residual
    wdoc = json.loads(wpath.read_text())
    for row in wdoc["witness"]["A"]["data"]:
        for cell in row:
            cell[0] *= 1.1
            cell[1] *= 1.1
    wpath.write_text(json.dumps(wdoc))
    assert run_cli(["verify", m, str(wpath)]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["verification"]["midpoint_residual"] > 1e-9


def test_verify_scaled_witness_document(tmp_path):
    # the witness document read back matches what _witness_from_doc builds
    doc = {
        "t": 0.5,
        "A": _matrix_to_doc(np.array([[1, 1j], [1j, -1]], dtype=complex)),
        "B": _matrix_to_doc(np.array([[1, -1j], [-1j, -1]], dtype=complex)),
    }
    w = _witness_from_doc(doc)
    assert w.t == 0.5 and w.construction == "external"


def test_range_csv(tmp_path):
    m = write_matrix(tmp_path / "m.json", [[1.0, 0.3], [0.3, -0.5]])
    out = tmp_path / "r.csv"
    assert run_cli(["range", m, "--points", "64", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "theta,re,im"
    assert len(lines) == 65
    for line in lines[1:]:
        th, re, im = (float(u) for u in line.split(","))
        assert abs(im) <= 1e-10  # hermitian input: boundary on the real axis


def test_range_csv_scalar_repeated_point(tmp_path):
    m = write_matrix(tmp_path / "m.json", (0.5 + 0.25j) * np.eye(2))
    out = tmp_path / "r.csv"
    run_cli(["range", m, "--points", "8", "--out", str(out)])
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    for _, re, im in rows:
        assert abs(complex(float(re), float(im)) - (0.5 + 0.25j)) <= 1e-9


def test_range_svg_deterministic(tmp_path):
    m = write_matrix(tmp_path / "m.json", [[0.2, 1.1], [0.0, -0.4 + 0.3j]])
    o1, o2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run_cli(["range", m, "--format", "svg", "--out", str(o1)]) == 0
    assert run_cli(["range", m, "--format", "svg", "--out", str(o2)]) == 0
    s = o1.read_bytes()
    assert s == o2.read_bytes()
    text = s.decode()
    assert text.startswith("<svg")
    assert 'width="800" height="800"' in text
    assert "<circle" in text and "<polyline" in text


def test_range_boundary_max_modulus(tmp_path):
    m = write_matrix(tmp_path / "m.json", [[1.0, 1.0], [0.0, -1.0]])
    out = tmp_path / "r.csv"
    run_cli(["range", m, "--points", "720", "--out", str(out)])
    best = 0.0
    for line in out.read_text().splitlines()[1:]:
        _, re, im = (float(u) for u in line.split(","))
        best = max(best, math.hypot(re, im))
    assert abs(best - math.sqrt(5.0) / 2.0) <= 1e-6


def test_cli_entrypoint_subprocess(tmp_path):
    p = write_matrix(tmp_path / "m.json", [[1, 1j], [1j, -1]])
    r = subprocess.run(
        [sys.executable, "-m", "nuext.cli", "classify", str(p)],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert json.loads(r.stdout)["verdict"]["kind"] == "Extreme"


def test_parser_defaults():
    args = build_parser().parse_args(["classify", "x.json"])
    assert args.tol == 1e-7 and args.samples == 10**5 and args.seed == 42
    args = build_parser().parse_args(["range", "x.json"])
    assert args.points == 360 and args.format == "csv"
