"""Numerical radius engine: angle sweep, random sampling, maximizer sets.

w(T) = max over theta of lambda_max(Re(e^{i theta} T)).  The sweep walks a
coarse theta grid, then refines every circular local maximum by golden
section.  lambda_max(Re(e^{i theta} T)) is Lipschitz in theta with constant
at most ||T||, so the coarse grid brackets the global maximum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    Matrix,
    as_matrix,
    frobenius,
    hermitian_eigen,
    imag_part,
    operator_norm,
    real_part,
)
from .errors import DimensionMismatchError

TWO_PI = 2.0 * math.pi
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepConfig:
    coarse_points: int = 720
    refine_tol: float = 1e-12
    dedup_tol: float = 1e-8

    def __post_init__(self):
        if self.coarse_points < 4:
            raise ValueError("coarse_points must be >= 4")
        if self.refine_tol <= 0 or self.dedup_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class RadiusReport:
    value: float
    theta_stars: list[float] = field(default_factory=list)
    maximizers: list[np.ndarray] = field(default_factory=list)
    method: str = "sweep"


def _lmax_batch(re: Matrix, im: Matrix, thetas: np.ndarray) -> np.ndarray:
    """lambda_max(cos(t) Re - sin(t) Im) for a vector of angles t."""
    n = re.shape[0]
    c = np.cos(thetas)
    s = np.sin(thetas)
    if n == 1:
        return c * re[0, 0].real - s * im[0, 0].real
    if n == 2:
        a = c * re[0, 0].real - s * im[0, 0].real
        b = c * re[1, 1].real - s * im[1, 1].real
        q = c * re[0, 1] - s * im[0, 1]
        return 0.5 * (a + b) + np.hypot(0.5 * (a - b), np.abs(q))
    hs = c[:, None, None] * re[None, :, :] - s[:, None, None] * im[None, :, :]
    return np.linalg.eigvalsh(hs)[:, -1]


def _refine_golden(re, im, lo: np.ndarray, hi: np.ndarray, tol: float):
    """Vectorized golden-section maximization on a batch of brackets."""
    a = lo.copy()
    b = hi.copy()
    m = a.size
    while np.max(b - a) > tol:
        d = GOLDEN * (b - a)
        x1 = b - d
        x2 = a + d
        f = _lmax_batch(re, im, np.concatenate([x1, x2]))
        take_left = f[:m] >= f[m:]
        b = np.where(take_left, x2, b)
        a = np.where(take_left, a, x1)
    mid = 0.5 * (a + b)
    return mid, _lmax_batch(re, im, mid)


def _canonical_phase(x: np.ndarray) -> np.ndarray:
    """Scale a unit vector so its largest-modulus component is positive real."""
    k = int(np.argmax(np.abs(x)))
    piv = x[k]
    if abs(piv) == 0.0:
        return x
    return x * (np.conj(piv) / abs(piv))


def radius_value(t: Matrix, cfg: SweepConfig | None = None) -> float:
    """w(T) by sweep, values only (no maximizer extraction)."""
    t = as_matrix(t)
    cfg = cfg or SweepConfig()
    scale = frobenius(t)
    if scale == 0.0:
        return 0.0
    re = real_part(t)
    im = imag_part(t)
    thetas = np.linspace(0.0, TWO_PI, cfg.coarse_points, endpoint=False)
    vals = _lmax_batch(re, im, thetas)
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    is_peak = (vals >= left) & (vals >= right)
    idx = np.nonzero(is_peak)[0]
    if idx.size == 0:
        idx = np.array([int(np.argmax(vals))])
    h = TWO_PI / cfg.coarse_points
    lo = thetas[idx] - h
    hi = thetas[idx] + h
    _, fstar = _refine_golden(re, im, lo, hi, cfg.refine_tol * max(1.0, scale))
    return float(np.max(fstar))


def radius_sweep(t: Matrix, cfg: SweepConfig | None = None) -> RadiusReport:
    """w(T) with maximizing angles and phase-canonical maximizer vectors."""
    t = as_matrix(t)
    cfg = cfg or SweepConfig()
    scale = frobenius(t)
    if scale == 0.0:
        return RadiusReport(0.0, [], [], "sweep")
    re = real_part(t)
    im = imag_part(t)
    thetas = np.linspace(0.0, TWO_PI, cfg.coarse_points, endpoint=False)
    vals = _lmax_batch(re, im, thetas)
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    idx = np.nonzero((vals >= left) & (vals >= right))[0]
    if idx.size == 0:
        idx = np.array([int(np.argmax(vals))])
    h = TWO_PI / cfg.coarse_points
    t_star, f_star = _refine_golden(
        re, im, thetas[idx] - h, thetas[idx] + h, cfg.refine_tol * max(1.0, scale)
    )
    w = float(np.max(f_star))
    keep = f_star >= w - cfg.dedup_tol * max(1.0, scale)
    theta_stars: list[float] = []
    for th in np.mod(t_star[keep], TWO_PI):
        if all(_circ_dist(th, s) > cfg.dedup_tol for s in theta_stars):
            theta_stars.append(float(th))
    theta_stars.sort()
    maximizers: list[np.ndarray] = []
    for th in theta_stars:
        h_mat = math.cos(th) * re - math.sin(th) * im
        es = hermitian_eigen(h_mat, tol=1e-6)
        top = es.values[0]
        for i in range(len(es.values)):
            # keep the whole top eigenspace when it is degenerate
            if top - es.values[i] > 1e-9 * max(1.0, scale):
                break
            x = _canonical_phase(es.vectors[:, i])
            if all(np.linalg.norm(x - m) > cfg.dedup_tol for m in maximizers):
                maximizers.append(x)
    return RadiusReport(w, theta_stars, maximizers, "sweep")


def _circ_dist(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def radius_sample(t: Matrix, n_samples: int, seed: int = 42) -> float:
    """Lower bound on w(T): max |<Tx,x>| over random unit vectors."""
    t = as_matrix(t)
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    n = t.shape[0]
    rng = np.random.default_rng(seed)
    best = 0.0
    chunk = 65536
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        z = z / np.linalg.norm(z, axis=1, keepdims=True)
        q = np.einsum("bi,ij,bj->b", np.conj(z), t, z)
        best = max(best, float(np.max(np.abs(q))))
        done += m
    return best


def maximizer_contains_on_basis(report: RadiusReport, tol: float = 1e-7):
    """An orthogonal pair of maximizers of a 2x2 matrix, or None."""
    if report.maximizers and report.maximizers[0].size != 2:
        raise DimensionMismatchError("maximizer_contains_on_basis needs n = 2")
    ms = report.maximizers
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if abs(np.vdot(ms[i], ms[j])) <= tol:
                return ms[i], ms[j]
    return None


def is_normaloid(t: Matrix, tol: float = 1e-7) -> bool:
    """True iff w(T) = ||T|| within tol (relative)."""
    t = as_matrix(t)
    nrm = operator_norm(t)
    return abs(radius_value(t) - nrm) <= tol * max(1.0, nrm)


def range_boundary(t: Matrix, n_points: int) -> list[complex]:
    """Boundary of the numerical range via support angles."""
    t = as_matrix(t)
    if n_points < 3:
        raise ValueError("n_points must be >= 3")
    re = real_part(t)
    im = imag_part(t)
    pts: list[complex] = []
    for k in range(n_points):
        th = TWO_PI * k / n_points
        h_mat = math.cos(th) * re - math.sin(th) * im
        es = hermitian_eigen(h_mat, tol=1e-6)
        x = es.vectors[:, 0]
        pts.append(complex(np.vdot(x, t @ x)))
    return pts


def maximizer_condition_residual(t: Matrix, x: np.ndarray) -> float:
    """Residual of the maximizer eigenvector condition at w(T) = 1.

    A unit maximizer x of an operator with w(T) = 1 is an eigenvector of
    <Re(T)x,x> Re(T) + <Im(T)x,x> Im(T) with eigenvalue 1.
    """
    t = as_matrix(t)
    x = np.array(x, dtype=complex).reshape(-1)
    re = real_part(t)
    im = imag_part(t)
    cr = float(np.real(np.vdot(x, re @ x)))
    ci = float(np.real(np.vdot(x, im @ x)))
    return float(np.linalg.norm((cr * re + ci * im) @ x - x))
