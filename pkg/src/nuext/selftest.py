"""Built-in regression corpus and oracle-agreement checks.

Each check is tagged with the rule id it exercises; run_selftest prints a
per-rule pass table and returns True only if everything passes.  The CLI
exposes this as the `selftest` subcommand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .classify import classify, pair_extreme
from .closedforms import (
    WtFamily,
    radius_block,
    radius_collinear,
    radius_johnson,
    radius_wt_family,
    triangularize_wt,
)
from .linalg import random_complex_matrix, random_unitary
from .radius import is_normaloid, radius_sample, radius_value
from .witness import selfadjoint_split, shear_split, verify_witness


@dataclass(frozen=True)
class Check:
    rule: str
    name: str
    fn: Callable[[np.random.Generator], bool]


def _m(rows) -> np.ndarray:
    return np.array(rows, dtype=complex)


def _close(x, y, tol=1e-9) -> bool:
    return abs(x - y) <= tol


def _checks() -> list[Check]:
    cs: list[Check] = []

    def add(rule, name):
        def deco(fn):
            cs.append(Check(rule, name, fn))
            return fn

        return deco

    @add("Lemma2.4", "radius of the nilpotent [[0,2i],[0,0]] is 1")
    def _(rng):
        return _close(radius_value(_m([[0, 2j], [0, 0]])), 1.0)

    @add("Lemma2.4", "diag(1,-1) splits into the two stated rotations")
    def _(rng):
        t = _m([[1, 0], [0, -1]])
        v = classify(t)
        if v.kind != "NotExtreme" or v.theorem != "Lemma2.4":
            return False
        a_want = _m([[1, 1j], [1j, -1]])
        return (
            np.allclose(v.witness.A, a_want, atol=1e-12)
            and np.allclose(v.witness.B, np.conj(a_want.T), atol=1e-12)
            and v.verification.passed
        )

    @add("Thm2.14", "[[1,i],[i,-1]] has radius 1 and is extreme")
    def _(rng):
        t = _m([[1, 1j], [1j, -1]])
        v = classify(t)
        return _close(radius_value(t), 1.0) and v.kind == "Extreme"

    @add("Thm2.14", "[[1,1/2],[-1/2,-1]] has radius 1 and is not extreme")
    def _(rng):
        t = _m([[1, 0.5], [-0.5, -1]])
        v = classify(t)
        return (
            _close(radius_value(t), 1.0)
            and v.kind == "NotExtreme"
            and v.verification.passed
        )

    @add("Thm2.9", "diag(I2, -I2) is not extreme")
    def _(rng):
        v = classify(np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex))
        return v.kind == "NotExtreme" and v.verification.passed

    @add("Lemma2.15", "shear radius |b| + |z|/2 and witness values, 100 draws")
    def _(rng):
        for _k in range(100):
            b = complex(rng.standard_normal(), rng.standard_normal())
            z = complex(rng.standard_normal(), rng.standard_normal())
            if abs(b) < 1e-3 or abs(z) < 1e-3:
                continue
            want = abs(b) + abs(z) / 2.0
            if not _close(radius_value(_m([[b, z], [0, b]])), want):
                return False
            w = shear_split(b, z)
            k = abs(z) / abs(b)
            part = abs(b) * (k + 2.0) / 2.0
            if not _close(radius_value(w.A), part):
                return False
            if not _close(radius_value(w.B), part):
                return False
        return True

    @add("Thm2.12", "block formula agrees with the sweep, 100 draws")
    def _(rng):
        for _k in range(100):
            l1 = complex(rng.standard_normal(), rng.standard_normal())
            l2 = complex(rng.standard_normal(), rng.standard_normal())
            an = abs(rng.standard_normal())
            z = an * np.exp(1j * rng.uniform(0, 2 * math.pi))
            got, _geo = radius_block(l1, l2, an)
            if abs(got - radius_value(_m([[l1, z], [0, l2]]))) > 1e-7:
                return False
        return True

    @add("Thm2.16", "equal-modulus formula agrees with the sweep, 100 draws")
    def _(rng):
        done = 0
        while done < 100:
            r = rng.uniform(0.1, 2.0)
            p1, p2 = rng.uniform(0, 2 * math.pi, 2)
            l1, l2 = r * np.exp(1j * p1), r * np.exp(1j * p2)
            if abs(l1 - l2) < 1e-6:
                continue
            z = complex(rng.standard_normal(), rng.standard_normal())
            if abs(radius_johnson(l1, l2, z) - radius_value(_m([[l1, z], [0, l2]]))) > 1e-7:
                return False
            done += 1
        return True

    @add("Lemma2.17", "radius-one family, both regions, 100 draws")
    def _(rng):
        done = 0
        while done < 100:
            a = rng.uniform(-0.95, 0.95)
            if done % 2 == 0:
                q = rng.uniform((1 - a) ** 2 * 1.0001, 2 * (1 - a))
            else:
                q = rng.uniform(1e-4, (1 - a) ** 2 * 0.9999)
            am = math.sqrt(q) / 2.0
            fam = WtFamily(a, am * np.exp(1j * rng.uniform(0, 2 * math.pi)))
            if radius_wt_family(fam) != 1.0:
                return False
            if abs(radius_value(fam.matrix()) - 1.0) > 1e-7:
                return False
            _u, form = triangularize_wt(fam)
            done += 1
        return True

    @add("Lemma2.17", "explicit example values in both regions")
    def _(rng):
        f1 = WtFamily(0.0, 0.6)  # 4|alpha|^2 = 1.44 in (1, 2]
        f2 = WtFamily(0.0, 0.4)  # 4|alpha|^2 = 0.64 < 1
        f3 = WtFamily(0.0, 1 / math.sqrt(2))  # closed boundary of the first region
        return (
            radius_wt_family(f1) == 1.0
            and radius_wt_family(f2) == 1.0
            and radius_wt_family(f3) == 1.0
            and abs(radius_value(f3.matrix()) - 1.0) <= 1e-8
        )

    @add("collinear", "collinear formula on the stated instances")
    def _(rng):
        s3 = math.sqrt(3) / 2
        return (
            _close(radius_collinear(s3, -s3, 1.0), 1.0)
            and _close(radius_collinear(0, 0, 2j), 1.0)
            and _close(radius_collinear(0.3, 0.3, 0.8), 0.3 + 0.4)
        )

    @add("Thm2.1", "non-unitary normaloids are not extreme, 20 draws")
    def _(rng):
        for _k in range(20):
            n = int(rng.integers(2, 5))
            d = np.exp(1j * rng.uniform(0, 2 * math.pi, n)) * rng.uniform(0.2, 0.9, n)
            d[0] = d[0] / abs(d[0])
            q = random_unitary(n, rng)
            t = q @ np.diag(d) @ np.conj(q.T)
            v = classify(t)
            if v.kind != "NotExtreme" or not v.verification.passed:
                return False
        return True

    @add("Thm2.7", "pair criterion on the stated pairs")
    def _(rng):
        return (
            pair_extreme(1, 1)
            and not pair_extreme(1, -1)
            and pair_extreme(1, 1j)
            and not pair_extreme(1, 0.5)
        )

    @add("Thm2.18", "the boundary instance abstains with the gap tag")
    def _(rng):
        r = 1 / math.sqrt(2)
        v = classify(_m([[1, r], [-r, 0]]))
        return v.kind == "Unknown" and v.theorem == "Thm2.18-gap"

    @add("sampling", "sampling oracle: lower bound always, tight for n <= 2")
    def _(rng):
        if radius_sample(np.diag([1.0, -1.0]).astype(complex), 10**5) < 0.999:
            return False
        for _k in range(20):
            n = int(rng.integers(1, 5))
            t = random_complex_matrix(n, rng)
            sw = radius_value(t)
            sa = radius_sample(t, 10**5, seed=int(rng.integers(1, 10**6)))
            if sa > sw + 1e-12:
                return False  # must never exceed the true value
            if n <= 2 and sa < sw - 5e-3:
                return False  # uniform sampling is only dense enough for n <= 2
        return True

    @add("Thm2.5", "self-adjoint witnesses verify, 20 draws")
    def _(rng):
        for _k in range(20):
            n = int(rng.integers(2, 6))
            vals = rng.uniform(-1, 1, n)
            vals[int(rng.integers(n))] = rng.choice([-1.0, 1.0])
            q = random_unitary(n, rng)
            t = q @ np.diag(vals) @ np.conj(q.T)
            t = 0.5 * (t + np.conj(t.T))
            v = classify(t)
            if v.kind == "NotExtreme" and not v.verification.passed:
                return False
            if np.max(np.abs(np.abs(vals) - 1.0)) > 1e-3 and v.kind != "NotExtreme":
                return False  # clearly non-unitary self-adjoint must split
        return True

    @add("Lemma2.6", "tampered witnesses are rejected")
    def _(rng):
        t = _m([[1, 0], [0, -1]])
        w = selfadjoint_split(1.0, -1.0)
        good = verify_witness(t, w)
        from .witness import Witness

        bad_scale = Witness(w.t, 1.1 * w.A, w.B, w.construction)
        bad_t = Witness(0.4, w.A, w.B, w.construction)
        return (
            good.passed
            and not verify_witness(t, bad_scale).passed
            and not verify_witness(t, bad_t).passed
        )

    @add("norms", "normaloid flag and sandwich bound, 30 draws")
    def _(rng):
        from .linalg import operator_norm

        for _k in range(30):
            n = int(rng.integers(1, 6))
            t = random_complex_matrix(n, rng)
            w = radius_value(t)
            nrm = operator_norm(t)
            if not (0.5 * nrm - 1e-9 <= w <= nrm + 1e-9):
                return False
            if is_normaloid(t) != (abs(w - nrm) <= 1e-7 * max(1.0, nrm)):
                return False
        return True

    return cs


def run_selftest(seed: int = 42, verbose: bool = True) -> bool:
    rng = np.random.default_rng(seed)
    rows = []
    all_ok = True
    for check in _checks():
        ok = bool(check.fn(rng))
        all_ok = all_ok and ok
        rows.append((check.rule, check.name, ok))
    if verbose:
        width = max(len(r[0]) for r in rows)
        for rule, name, ok in rows:
            print(f"{rule:<{width}}  {'pass' if ok else 'FAIL'}  {name}")
        print(f"selftest: {'all checks passed' if all_ok else 'FAILURES present'}")
    return all_ok
