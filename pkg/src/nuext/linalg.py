"""Small dense complex linear algebra: decompositions and predicates.

Matrices are plain complex numpy arrays; everything here is pure and
value-semantic.  The Hermitian eigensolver is a cyclic Jacobi iteration
(closed form for n <= 2), the SVD is built on top of it.  Target sizes
are n <= 16, so simplicity wins over BLAS-grade generality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DependentInputError,
    DimensionMismatchError,
    InternalInconsistencyError,
    NotHermitianError,
    NotNormalError,
    NotUnitaryError,
)

Matrix = np.ndarray
Vector = np.ndarray

PREDICATE_TOL = 1e-9


def as_matrix(m) -> Matrix:
    """Coerce to a square complex matrix with finite entries."""
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def as_unit_vector(v) -> Vector:
    a = np.array(v, dtype=complex).reshape(-1)
    nrm = float(np.linalg.norm(a))
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"vector norm {nrm} is not 1 within 1e-12")
    return a


def adjoint(m: Matrix) -> Matrix:
    """Conjugate transpose."""
    return np.conj(as_matrix(m).T)


def real_part(m: Matrix) -> Matrix:
    """(M + M*)/2, always Hermitian."""
    m = as_matrix(m)
    return 0.5 * (m + np.conj(m.T))


def imag_part(m: Matrix) -> Matrix:
    """(M - M*)/(2i), always Hermitian; M = real_part + i*imag_part."""
    m = as_matrix(m)
    return (m - np.conj(m.T)) / 2j


def frobenius(m: Matrix) -> float:
    return float(np.linalg.norm(m))


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues (real, descending) and orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class SvdSystem:
    """M = U @ diag(sigma) @ V*; U, V unitary, sigma descending >= 0."""

    U: Matrix
    sigma: np.ndarray
    V: Matrix


def _eigh_2x2(h: Matrix) -> EigenSystem:
    # closed form; exact up to rounding, no iteration
    a = h[0, 0].real
    b = h[1, 1].real
    q = complex(h[0, 1])
    half = 0.5 * (a - b)
    r = math.hypot(half, abs(q))
    mid = 0.5 * (a + b)
    if r == 0.0:
        return EigenSystem(np.array([mid, mid]), np.eye(2, dtype=complex))
    # eigenvector for the top eigenvalue mid + r; pick the better-conditioned row
    v1 = np.array([q, r - half], dtype=complex)
    v2 = np.array([r + half, np.conj(q)], dtype=complex)
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    v = v / np.linalg.norm(v)
    w = np.array([-np.conj(v[1]), np.conj(v[0])], dtype=complex)
    vecs = np.column_stack([v, w])
    return EigenSystem(np.array([mid + r, mid - r]), vecs)


def _jacobi(h: Matrix) -> EigenSystem:
    n = h.shape[0]
    a = h.astype(complex).copy()
    v = np.eye(n, dtype=complex)
    scale = max(1.0, frobenius(a))
    for _ in range(100):
        off = math.sqrt(
            sum(abs(a[p, q]) ** 2 for p in range(n) for q in range(n) if p != q)
        )
        if off <= 1e-14 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                phi = math.atan2(apq.imag, apq.real)
                w = abs(apq)
                t = 0.5 * math.atan2(2.0 * w, a[p, p].real - a[q, q].real)
                c, s = math.cos(t), math.sin(t)
                e = complex(math.cos(phi), -math.sin(phi))
                # rotation on the (p, q) plane: diag(1, e) then a real rotation
                j2 = np.array([[c, -s], [s * e, c * e]], dtype=complex)
                a[:, [p, q]] = a[:, [p, q]] @ j2
                a[[p, q], :] = np.conj(j2.T) @ a[[p, q], :]
                v[:, [p, q]] = v[:, [p, q]] @ j2
    vals = np.real(np.diag(a))
    order = np.argsort(-vals)
    return EigenSystem(vals[order], v[:, order])


def hermitian_eigen(h: Matrix, tol: float = PREDICATE_TOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi.

    Raises NotHermitianError if ||H - H*|| > tol * max(1, ||H||).
    """
    h = as_matrix(h)
    scale = max(1.0, frobenius(h))
    if frobenius(h - np.conj(h.T)) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    hh = 0.5 * (h + np.conj(h.T))
    n = hh.shape[0]
    if n == 1:
        return EigenSystem(np.array([hh[0, 0].real]), np.eye(1, dtype=complex))
    if n == 2:
        return _eigh_2x2(hh)
    return _jacobi(hh)


def _lmax_hermitian(h: Matrix) -> float:
    """Largest eigenvalue of a Hermitian matrix (values only, fast path)."""
    n = h.shape[0]
    if n == 1:
        return float(h[0, 0].real)
    if n == 2:
        a, b = h[0, 0].real, h[1, 1].real
        return 0.5 * (a + b) + math.hypot(0.5 * (a - b), abs(h[0, 1]))
    return float(np.linalg.eigvalsh(0.5 * (h + np.conj(h.T)))[-1])


def operator_norm(m: Matrix) -> float:
    """Spectral norm sqrt(lambda_max(M* M))."""
    m = as_matrix(m)
    g = np.conj(m.T) @ m
    return math.sqrt(max(0.0, _lmax_hermitian(g)))


def svd(m: Matrix) -> SvdSystem:
    """Singular value decomposition built from hermitian_eigen(M* M)."""
    m = as_matrix(m)
    n = m.shape[0]
    g = np.conj(m.T) @ m
    es = hermitian_eigen(g, tol=1e-6)
    sigma = np.sqrt(np.clip(es.values, 0.0, None))
    v = es.vectors
    cutoff = 1e-12 * max(1.0, float(sigma[0]) if n else 1.0)
    cols: list[Vector] = []
    for i in range(n):
        if sigma[i] > cutoff:
            u = (m @ v[:, i]) / sigma[i]
            for c in cols:  # one re-orthogonalization pass
                u = u - c * np.vdot(c, u)
            u = u / np.linalg.norm(u)
            cols.append(u)
    full = orthonormal_complete(cols, dim=n) if len(cols) < n else cols
    u_mat = np.column_stack(full)
    return SvdSystem(u_mat, sigma, v)


def is_self_adjoint(m: Matrix, tol: float = PREDICATE_TOL) -> bool:
    m = as_matrix(m)
    return frobenius(m - np.conj(m.T)) <= tol * max(1.0, frobenius(m))


def is_normal(m: Matrix, tol: float = PREDICATE_TOL) -> bool:
    m = as_matrix(m)
    comm = m @ np.conj(m.T) - np.conj(m.T) @ m
    return frobenius(comm) <= tol * max(1.0, frobenius(m) ** 2)


def is_isometry(m: Matrix, tol: float = PREDICATE_TOL) -> bool:
    m = as_matrix(m)
    eye = np.eye(m.shape[0])
    return frobenius(np.conj(m.T) @ m - eye) <= tol * max(1.0, frobenius(m) ** 2)


def is_co_isometry(m: Matrix, tol: float = PREDICATE_TOL) -> bool:
    m = as_matrix(m)
    eye = np.eye(m.shape[0])
    return frobenius(m @ np.conj(m.T) - eye) <= tol * max(1.0, frobenius(m) ** 2)


def is_unitary(m: Matrix, tol: float = PREDICATE_TOL) -> bool:
    return is_isometry(m, tol) and is_co_isometry(m, tol)


def is_positive(m: Matrix, tol: float = PREDICATE_TOL) -> bool:
    m = as_matrix(m)
    if not is_self_adjoint(m, tol):
        return False
    es = hermitian_eigen(m, tol=max(tol, 1e-8))
    return bool(es.values[-1] >= -tol * max(1.0, frobenius(m)))


def eigenvalues_2x2(m: Matrix) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix by the stabilized quadratic formula."""
    m = as_matrix(m)
    if m.shape[0] != 2:
        raise DimensionMismatchError("eigenvalues_2x2 needs a 2x2 matrix")
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    sq = np.sqrt(complex(tr * tr - 4.0 * det))
    lam1 = 0.5 * (tr + sq) if abs(tr + sq) >= abs(tr - sq) else 0.5 * (tr - sq)
    lam2 = det / lam1 if abs(lam1) > 0 else tr - lam1
    return complex(lam1), complex(lam2)


def schur_2x2(m: Matrix) -> tuple[Matrix, Matrix]:
    """Unitary U and upper triangular U* M U for a 2x2 matrix.

    If M is already upper triangular within 1e-14 (relative), returns (I, M).
    """
    m = as_matrix(m)
    if m.shape[0] != 2:
        raise DimensionMismatchError("schur_2x2 needs a 2x2 matrix")
    scale = max(1.0, frobenius(m))
    if abs(m[1, 0]) <= 1e-14 * scale:
        upper = m.copy()
        upper[1, 0] = 0.0
        return np.eye(2, dtype=complex), upper
    lam1, _ = eigenvalues_2x2(m)
    nil = m - lam1 * np.eye(2)
    # null vector of (M - lam1 I) from whichever row is better conditioned
    v1 = np.array([nil[0, 1], -nil[0, 0]], dtype=complex)
    v2 = np.array([nil[1, 1], -nil[1, 0]], dtype=complex)
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    v = v / np.linalg.norm(v)
    w = np.array([-np.conj(v[1]), np.conj(v[0])], dtype=complex)
    u = np.column_stack([v, w])
    upper = np.conj(u.T) @ m @ u
    if abs(upper[1, 0]) > 1e-12 * scale:
        raise InternalInconsistencyError(
            f"triangularization residual {abs(upper[1, 0])} too large"
        )
    upper[1, 0] = 0.0
    return u, upper


def conjugate(u: Matrix, t: Matrix) -> Matrix:
    """U* T U for a unitary U (checked within 1e-10)."""
    u = as_matrix(u)
    t = as_matrix(t)
    if not is_unitary(u, 1e-10):
        raise NotUnitaryError("conjugating matrix is not unitary within 1e-10")
    if u.shape != t.shape:
        raise DimensionMismatchError("conjugate: shape mismatch")
    return np.conj(u.T) @ t @ u


def orthonormal_complete(vs: list[Vector], dim: int | None = None) -> list[Vector]:
    """Extend pairwise-orthonormal vectors to a full orthonormal basis."""
    vs = [np.array(v, dtype=complex).reshape(-1) for v in vs]
    if dim is None:
        if not vs:
            raise DimensionMismatchError("dim required when input is empty")
        dim = vs[0].size
    for i, v in enumerate(vs):
        if v.size != dim:
            raise DimensionMismatchError("inconsistent vector dimensions")
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise DependentInputError("input vectors must be unit within 1e-10")
        for w in vs[:i]:
            if abs(np.vdot(w, v)) > 1e-10:
                raise DependentInputError("input vectors must be orthogonal within 1e-10")
    basis = [v.copy() for v in vs]
    while len(basis) < dim:
        best, best_norm = None, -1.0
        for k in range(dim):
            cand = np.zeros(dim, dtype=complex)
            cand[k] = 1.0
            for b in basis:
                cand = cand - b * np.vdot(b, cand)
            nrm = float(np.linalg.norm(cand))
            if nrm > best_norm:
                best, best_norm = cand, nrm
        assert best is not None
        best = best / best_norm
        for b in basis:  # second pass for orthogonality at 1e-12
            best = best - b * np.vdot(b, best)
        basis.append(best / np.linalg.norm(best))
    return basis


def normal_eigen(t: Matrix, tol: float = PREDICATE_TOL) -> tuple[np.ndarray, Matrix]:
    """Joint diagonalization of a normal matrix: values d and unitary Q with
    Q* T Q = diag(d).

    Diagonalizes Re(T), then diagonalizes Im(T) compressed to each
    eigenvalue cluster of Re(T); valid because the two parts commute.
    """
    t = as_matrix(t)
    if not is_normal(t, tol):
        raise NotNormalError("matrix is not normal within tolerance")
    n = t.shape[0]
    scale = max(1.0, frobenius(t))
    re, im = real_part(t), imag_part(t)
    es = hermitian_eigen(re, tol=1e-6)
    q = es.vectors.copy()
    vals = es.values
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(vals[j] - vals[i]) <= 1e-8 * scale:
            j += 1
        if j - i > 1:
            block = np.conj(q[:, i:j].T) @ im @ q[:, i:j]
            sub = hermitian_eigen(0.5 * (block + np.conj(block.T)), tol=1e-6)
            q[:, i:j] = q[:, i:j] @ sub.vectors
        i = j
    d = np.diag(np.conj(q.T) @ t @ q).copy()
    resid = frobenius(np.conj(q.T) @ t @ q - np.diag(d))
    if resid > 1e-7 * scale:
        raise NotNormalError(f"joint diagonalization residual {resid} too large")
    return d, q


def random_complex_matrix(n: int, rng: np.random.Generator) -> Matrix:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)


def random_unitary(n: int, rng: np.random.Generator) -> Matrix:
    """Haar-ish random unitary: Gram-Schmidt of a complex Gaussian matrix."""
    z = random_complex_matrix(n, rng)
    cols: list[Vector] = []
    for k in range(n):
        v = z[:, k]
        for c in cols:
            v = v - c * np.vdot(c, v)
        nrm = float(np.linalg.norm(v))
        if nrm < 1e-8:  # essentially never for Gaussian input
            return random_unitary(n, rng)
        v = v / nrm
        # fix the phase so the result is deterministic per seed
        piv = v[np.argmax(np.abs(v))]
        v = v * (np.conj(piv) / abs(piv))
        cols.append(v)
    return np.column_stack(cols)
