"""Closed-form numerical radii for structured 2x2 (and block) operators.

Covers the block upper-triangular ellipse formula, the collinear-eigenvalue
formula, the equal-modulus two-case formula, and the radius-one family
[[1, alpha], [-conj(alpha), a]] with its explicit triangularizations.
Every formula is cross-validated against the sweep engine in tests.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDiscriminantError,
    EqualEigenvaluesError,
    InternalInconsistencyError,
    ModulusMismatchError,
    NotCollinearError,
)
from .linalg import Matrix, frobenius

COLLINEAR_TOL = 1e-10


@dataclass(frozen=True)
class TriangularForm2x2:
    lambda1: complex
    lambda2: complex
    zeta: complex

    def matrix(self) -> Matrix:
        return np.array([[self.lambda1, self.zeta], [0.0, self.lambda2]], dtype=complex)


@dataclass(frozen=True)
class EllipseGeometry:
    """Rotated-ellipse data for the block operator [[l1 I, A], [0, l2 I]].

    The boundary of the numerical range is the ellipse
    (x, y) = (h, k) + rotation(theta) @ (a_axis cos(phi), b_axis sin(phi));
    the radius is the largest distance from the origin to that curve,
    attained at phi0 with point (x0, y0).
    """

    theta: float
    h: float
    k: float
    H_coef: float
    K_coef: float
    a_axis: float
    b_axis: float
    phi0: float
    x0: float
    y0: float

    def stationarity_residual(self) -> float:
        a, b = self.a_axis, self.b_axis
        lhs = 0.5 * (a * a - b * b) * math.sin(2.0 * self.phi0)
        rhs = b * self.K_coef * math.cos(self.phi0) - a * self.H_coef * math.sin(self.phi0)
        return abs(lhs - rhs)

    def point(self, phi: float) -> tuple[float, float]:
        ct, st = math.cos(self.theta), math.sin(self.theta)
        x = self.h + self.a_axis * math.cos(phi) * ct + self.b_axis * math.sin(phi) * st
        y = self.k + self.a_axis * math.cos(phi) * st - self.b_axis * math.sin(phi) * ct
        return x, y


@dataclass(frozen=True)
class WtFamily:
    """Parameters of [[1, alpha], [-conj(alpha), a]] with real |a| < 1."""

    a: float
    alpha: complex

    def __post_init__(self):
        if not abs(self.a) < 1.0:
            raise ValueError("need |a| < 1")
        if self.alpha == 0:
            raise ValueError("need alpha != 0")

    def matrix(self) -> Matrix:
        return np.array(
            [[1.0, self.alpha], [-np.conj(self.alpha), self.a]], dtype=complex
        )

    def discriminant(self) -> float:
        """4|alpha|^2 - (1-a)^2; sign selects the triangularization branch."""
        return 4.0 * abs(self.alpha) ** 2 - (1.0 - self.a) ** 2


def _sqdist(phis: np.ndarray, h, k, theta, a, b) -> np.ndarray:
    ct, st = math.cos(theta), math.sin(theta)
    x = h + a * np.cos(phis) * ct + b * np.sin(phis) * st
    y = k + a * np.cos(phis) * st - b * np.sin(phis) * ct
    return x * x + y * y


def radius_block(
    lambda1: complex, lambda2: complex, a_norm: float
) -> tuple[float, EllipseGeometry | None]:
    """Numerical radius of [[l1 I, A], [0, l2 I]] with ||A|| = a_norm.

    Returns the radius and the ellipse geometry; for l1 = l2 the angle of
    the focal axis is undefined and the value degenerates continuously to
    |l1| + a_norm/2, with geometry omitted.
    """
    if a_norm < 0:
        raise ValueError("a_norm must be >= 0")
    lambda1 = complex(lambda1)
    lambda2 = complex(lambda2)
    diff = 0.5 * (lambda1 - lambda2)
    if abs(diff) <= 1e-15 * max(1.0, abs(lambda1), abs(lambda2), a_norm):
        return abs(lambda1) + 0.5 * a_norm, None
    theta = cmath.phase(diff)
    h = 0.5 * (lambda1 + lambda2).real
    k = 0.5 * (lambda1 + lambda2).imag
    ct, st = math.cos(theta), math.sin(theta)
    H = h * ct + k * st
    K = h * st - k * ct
    a = 0.5 * math.sqrt(abs(lambda1 - lambda2) ** 2 + a_norm**2)
    b = 0.5 * a_norm
    # global maximum of squared distance over the ellipse, grid + Newton polish
    grid = np.linspace(0.0, 2.0 * math.pi, 1440, endpoint=False)
    vals = np.asarray(_sqdist(grid, h, k, theta, a, b))
    left, right = np.roll(vals, 1), np.roll(vals, -1)
    cands = list(grid[(vals >= left) & (vals >= right)])
    step = 2.0 * math.pi / 1440

    def g(phi: float) -> float:
        return (
            0.5 * (a * a - b * b) * math.sin(2.0 * phi)
            - b * K * math.cos(phi)
            + a * H * math.sin(phi)
        )

    def gp(phi: float) -> float:
        return (
            (a * a - b * b) * math.cos(2.0 * phi)
            + b * K * math.sin(phi)
            + a * H * math.cos(phi)
        )

    best_phi, best_val = None, -1.0
    for c in cands:
        lo, hi = c - step, c + step
        phi = float(c)
        for _ in range(60):  # safeguarded Newton on the stationarity equation
            d = gp(phi)
            nxt = phi - g(phi) / d if d != 0.0 else math.nan
            if not (lo <= nxt <= hi) or math.isnan(nxt):
                glo, ghi = g(lo), g(hi)
                if glo == 0.0:
                    nxt = lo
                elif ghi == 0.0:
                    nxt = hi
                elif glo * ghi < 0.0:
                    nxt = 0.5 * (lo + hi)
                else:
                    break
            if g(lo) * g(nxt) <= 0.0:
                hi = nxt
            else:
                lo = nxt
            if abs(nxt - phi) <= 1e-15:
                phi = nxt
                break
            phi = nxt
        v = float(_sqdist(np.array([phi]), h, k, theta, a, b)[0])
        if v > best_val:
            best_val, best_phi = v, phi
    assert best_phi is not None
    phi0 = best_phi % (2.0 * math.pi)
    geo = EllipseGeometry(
        theta, h, k, H, K, a, b, phi0,
        h + a * math.cos(phi0) * ct + b * math.sin(phi0) * st,
        k + a * math.cos(phi0) * st - b * math.sin(phi0) * ct,
    )
    return math.sqrt(best_val), geo


def radius_collinear(lambda1: complex, lambda2: complex, zeta: complex) -> float:
    """w of [[l1, zeta], [0, l2]] when l1, l2 share a line through 0.

    Value: (|l1 + l2| + sqrt(|l1 - l2|^2 + |zeta|^2)) / 2.
    """
    lambda1, lambda2 = complex(lambda1), complex(lambda2)
    cross = abs((lambda1 * np.conj(lambda2)).imag)
    if cross > COLLINEAR_TOL * max(1.0, abs(lambda1) * abs(lambda2)):
        raise NotCollinearError("eigenvalues are not collinear through the origin")
    return 0.5 * (
        abs(lambda1 + lambda2)
        + math.sqrt(abs(lambda1 - lambda2) ** 2 + abs(zeta) ** 2)
    )


def radius_johnson(lambda1: complex, lambda2: complex, zeta: complex) -> float:
    """w of [[l1, zeta], [0, l2]] when |l1| = |l2|, l1 != l2.

    With theta the half angle between the eigenvalue directions and
    z = |zeta| / (2 |l| sin(theta)):
    w = |l| (z sin(theta) + cos(theta)) when z >= tan(theta), else
    w = |l| sqrt(1 + z^2).
    """
    lambda1, lambda2 = complex(lambda1), complex(lambda2)
    r1, r2 = abs(lambda1), abs(lambda2)
    scale = max(1.0, r1, r2)
    if abs(r1 - r2) > 1e-10 * scale:
        raise ModulusMismatchError("|lambda1| != |lambda2|")
    if abs(lambda1 - lambda2) <= 1e-12 * scale:
        raise EqualEigenvaluesError("lambda1 = lambda2 has no half angle")
    r = 0.5 * (r1 + r2)
    # half angle in (0, pi/2]
    ang = abs(cmath.phase(lambda1 / lambda2)) / 2.0 if r > 0 else 0.0
    if ang > math.pi / 2.0:
        ang = math.pi - ang
    z = abs(zeta) / (2.0 * r * math.sin(ang))
    if math.cos(ang) <= 1e-15 or z >= math.tan(ang):
        return r * (z * math.sin(ang) + math.cos(ang))
    return r * math.sqrt(1.0 + z * z)


def radius_wt_family(fam: WtFamily) -> float | None:
    """w([[1, alpha], [-conj(alpha), a]]) where a known region applies.

    Returns 1.0 when (1-a)^2 < 4|alpha|^2 <= 2(1-a) or (1-a)^2 > 4|alpha|^2;
    None otherwise (no formula is available outside those regions).
    """
    q = 4.0 * abs(fam.alpha) ** 2
    gap = 1.0 - fam.a
    if gap * gap < q <= 2.0 * gap:
        return 1.0
    if q < gap * gap:
        return 1.0
    return None


def triangularize_wt(fam: WtFamily) -> tuple[Matrix, TriangularForm2x2]:
    """Explicit unitary U and upper-triangular form of the family matrix.

    Two branches by the sign of 4|alpha|^2 - (1-a)^2; the zero case is
    degenerate (a double eigenvalue) and is rejected.
    """
    a = fam.a
    alpha = fam.alpha
    disc = fam.discriminant()
    if abs(disc) <= 1e-14 * max(1.0, (1.0 - a) ** 2):
        raise DegenerateDiscriminantError("4|alpha|^2 = (1-a)^2")
    if disc > 0:
        kk = math.sqrt(disc)
        x = np.array([2.0 * alpha, -1.0 + a + 1j * kk], dtype=complex)
        u = np.array(
            [
                [2.0 * alpha, 1.0 - a + 1j * kk],
                [-1.0 + a + 1j * kk, 2.0 * np.conj(alpha)],
            ],
            dtype=complex,
        ) / np.linalg.norm(x)
        lam = complex(0.5 * (1.0 + a), 0.5 * kk)
        form = TriangularForm2x2(
            lam, np.conj(lam), (1.0 - a) * (1.0 - a + 1j * kk) / (2.0 * alpha)
        )
    else:
        rr = math.sqrt(-disc)
        x = np.array([2.0 * alpha, -1.0 + a + rr], dtype=complex)
        u = np.array(
            [
                [2.0 * alpha, 1.0 - a - rr],
                [-1.0 + a + rr, 2.0 * np.conj(alpha)],
            ],
            dtype=complex,
        ) / np.linalg.norm(x)
        form = TriangularForm2x2(
            0.5 * (1.0 + a + rr), 0.5 * (1.0 + a - rr), 2.0 * np.conj(alpha)
        )
    resid = frobenius(np.conj(u.T) @ fam.matrix() @ u - form.matrix())
    if resid > 1e-10 * max(1.0, frobenius(fam.matrix())):
        raise InternalInconsistencyError(f"triangularization residual {resid}")
    return u, form
