"""File-based front door: radius / classify / witness / verify / range / selftest.

Matrix files are JSON documents {"n": int, "data": n x n array of [re, im]
pairs, "label": optional string}.  Reports are JSON with sorted keys and a
fixed indent, so identical input and flags always produce identical bytes.
Exit codes: 0 Extreme (or plain success), 1 NotExtreme (or failed verify),
2 Unknown, 3 error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .classify import Verdict, classify
from .errors import BadFormatError, NuextError, ParseError
from .radius import (
    TWO_PI,
    is_normaloid,
    radius_sample,
    radius_sweep,
    range_boundary,
)
from .selftest import run_selftest
from .witness import Witness, verify_witness


def _matrix_to_doc(m: np.ndarray, label: str | None = None) -> dict:
    n = int(m.shape[0])
    doc: dict = {
        "n": n,
        "data": [[[float(m[i, j].real), float(m[i, j].imag)] for j in range(n)] for i in range(n)],
    }
    if label is not None:
        doc["label"] = label
    return doc


def _matrix_from_doc(doc) -> tuple[np.ndarray, str | None]:
    if not isinstance(doc, dict):
        raise ParseError("matrix document must be an object")
    try:
        n = int(doc["n"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or non-integer field 'n'")
    data = doc.get("data")
    if not isinstance(data, list) or len(data) != n:
        raise ParseError("'data' must be a list of n rows")
    m = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must have n entries")
        for j, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != 2:
                raise ParseError(f"entry ({i},{j}) must be a [re, im] pair")
            re, im = cell
            if not (isinstance(re, (int, float)) and isinstance(im, (int, float))):
                raise ParseError(f"entry ({i},{j}) has non-numeric parts")
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ParseError(f"entry ({i},{j}) is not finite")
            m[i, j] = complex(re, im)
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("'label' must be a string")
    return m, label


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}")


def load_matrix(path: str) -> tuple[np.ndarray, str | None]:
    return _matrix_from_doc(_load_json(path))


def _witness_to_doc(w: Witness) -> dict:
    return {
        "t": float(w.t),
        "construction": w.construction,
        "A": _matrix_to_doc(w.A),
        "B": _matrix_to_doc(w.B),
    }


def _witness_from_doc(doc) -> Witness:
    if isinstance(doc, dict) and "witness" in doc:  # accept a full report too
        doc = doc["witness"]
    if not isinstance(doc, dict):
        raise ParseError("witness document must be an object")
    try:
        t = float(doc["t"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or non-numeric field 't'")
    if "A" not in doc or "B" not in doc:
        raise ParseError("witness document needs fields 'A' and 'B'")
    a, _ = _matrix_from_doc(doc["A"])
    b, _ = _matrix_from_doc(doc["B"])
    construction = doc.get("construction", "external")
    if not isinstance(construction, str):
        raise ParseError("'construction' must be a string")
    return Witness(t, a, b, construction)


def _verdict_fields(v: Verdict) -> dict:
    out: dict = {
        "kind": v.kind,
        "theorem": v.theorem,
        "notes": v.notes,
        "scale": float(v.scale),
    }
    if v.witness is not None:
        out["witness"] = _witness_to_doc(v.witness)
    if v.verification is not None:
        r = v.verification
        out["verification"] = {
            "midpoint_residual": float(r.midpoint_residual),
            "radius_slack_A": float(r.radius_slack_A),
            "radius_slack_B": float(r.radius_slack_B),
            "distinctness": float(r.distinctness),
            "lemma_gen_residual": float(r.lemma_gen_residual),
            "passed": bool(r.passed),
        }
    return out


def serialize_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".nuext-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)


def _base_report(command: str, label: str | None, args) -> dict:
    return {
        "command": command,
        "label": label or "",
        "version": __version__,
        "tolerances": {"tol": args.tol, "seed": args.seed},
    }


def cmd_radius(args) -> int:
    m, label = load_matrix(args.path)
    rep = radius_sweep(m)
    sample = radius_sample(m, args.samples, seed=args.seed) if m.any() else 0.0
    doc = _base_report("radius", label, args)
    doc.update(
        {
            "method": ["sweep", "sample"],
            "radius": rep.value,
            "radius_sample": sample,
            "sample_gap": rep.value - sample,
            "samples": args.samples,
            "theta_stars": list(rep.theta_stars),
            "maximizers": [
                [[float(z.real), float(z.imag)] for z in x] for x in rep.maximizers
            ],
            "normaloid": bool(is_normaloid(m)),
        }
    )
    _emit(serialize_report(doc), args.out)
    return 0


_KIND_EXIT = {"Extreme": 0, "NotExtreme": 1, "Unknown": 2}


def cmd_classify(args) -> int:
    m, label = load_matrix(args.path)
    v = classify(m, tol=args.tol)
    doc = _base_report("classify", label, args)
    doc["method"] = ["classify"]
    doc["verdict"] = _verdict_fields(v)
    _emit(serialize_report(doc), args.out)
    return _KIND_EXIT[v.kind]


def cmd_witness(args) -> int:
    m, label = load_matrix(args.path)
    v = classify(m, tol=args.tol)
    doc = _base_report("witness", label, args)
    doc["method"] = ["classify"]
    doc["kind"] = v.kind
    doc["theorem"] = v.theorem
    if v.witness is not None:
        doc["witness"] = _witness_to_doc(v.witness)
        doc["scale"] = float(v.scale)
    _emit(serialize_report(doc), args.out)
    return _KIND_EXIT[v.kind]


def cmd_verify(args) -> int:
    m, label = load_matrix(args.path)
    w = _witness_from_doc(_load_json(args.witness_path))
    rep = verify_witness(m, w, tol=args.tol)
    doc = _base_report("verify", label, args)
    doc["method"] = ["verify"]
    doc["verification"] = {
        "midpoint_residual": float(rep.midpoint_residual),
        "radius_slack_A": float(rep.radius_slack_A),
        "radius_slack_B": float(rep.radius_slack_B),
        "distinctness": float(rep.distinctness),
        "lemma_gen_residual": float(rep.lemma_gen_residual),
        "passed": bool(rep.passed),
    }
    _emit(serialize_report(doc), args.out)
    return 0 if rep.passed else 1


def _svg(points: list[complex]) -> str:
    rmax = max(1.0, max(abs(p) for p in points)) * 1.1
    scale = 360.0 / rmax

    def sx(x: float) -> str:
        return repr(round(400.0 + scale * x, 6))

    def sy(y: float) -> str:
        return repr(round(400.0 - scale * y, 6))

    pts = " ".join(f"{sx(p.real)},{sy(p.imag)}" for p in points)
    # closed polyline: repeat the first vertex
    if points:
        pts += f" {sx(points[0].real)},{sy(points[0].imag)}"
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" '
        'viewBox="0 0 800 800">\n'
        '<rect width="800" height="800" fill="white"/>\n'
        f'<circle cx="400" cy="400" r="{repr(round(scale, 6))}" fill="none" '
        'stroke="#999999" stroke-width="1"/>\n'
        f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="2"/>\n'
        "</svg>\n"
    )


def cmd_range(args) -> int:
    if args.format not in ("csv", "svg"):
        raise BadFormatError(f"unknown format {args.format!r}")
    m, _label = load_matrix(args.path)
    pts = range_boundary(m, args.points)
    if args.format == "csv":
        lines = ["theta,re,im"]
        for k, p in enumerate(pts):
            th = TWO_PI * k / args.points
            lines.append(f"{th!r},{p.real!r},{p.imag!r}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_svg(pts), args.out)
    return 0


def cmd_selftest(args) -> int:
    return 0 if run_selftest(seed=args.seed) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nuext",
        description="Numerical radius, extreme-point classification, witnesses.",
    )
    p.add_argument("--version", action="version", version=f"nuext {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=float, default=1e-7)
        sp.add_argument("--samples", type=int, default=10**5)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("radius", help="compute w(T) by sweep and sampling")
    sp.add_argument("path")
    common(sp)
    sp.set_defaults(fn=cmd_radius)

    sp = sub.add_parser("classify", help="extreme-point verdict with witness")
    sp.add_argument("path")
    common(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("witness", help="emit only the decomposition witness")
    sp.add_argument("path")
    common(sp)
    sp.set_defaults(fn=cmd_witness)

    sp = sub.add_parser("verify", help="re-check an externally supplied witness")
    sp.add_argument("path")
    sp.add_argument("witness_path")
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("range", help="numerical range boundary as csv or svg")
    sp.add_argument("path")
    common(sp)
    sp.add_argument("--points", type=int, default=360)
    sp.add_argument("--format", default="csv", choices=["csv", "svg"])
    sp.set_defaults(fn=cmd_range)

    sp = sub.add_parser("selftest", help="run the built-in regression corpus")
    sp.add_argument("--seed", type=int, default=42)
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NuextError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
