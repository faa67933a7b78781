"""Small dense linear algebra over real symmetric and complex square matrices.

Matrices are plain numpy arrays. Symmetric inputs are normalised by
:func:`as_sym`, which keeps the lower triangle and mirrors it, so symmetry
holds exactly. Most kernels accept a stack of matrices (shape ``(..., m, m)``)
so callers can evaluate whole quadrature rules or path ensembles at once.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    ConvergenceError,
    DimensionError,
    NotPSDError,
    SingularMatrixError,
)

MAX_DIM = 64
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
PIVOT_TOL = 1e-14
PSD_TOL = 1e-10


def _check_square(a: np.ndarray) -> int:
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionError(f"expected square matrix, got shape {a.shape}")
    m = a.shape[-1]
    if not 1 <= m <= MAX_DIM:
        raise DimensionError(f"dimension {m} outside [1, {MAX_DIM}]")
    return m


def as_sym(a) -> np.ndarray:
    """Return a real symmetric copy of ``a`` built from its lower triangle."""
    a = np.array(a, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    _check_square(a)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    low = np.tril(a)
    return low + np.swapaxes(np.tril(a, -1), -1, -2)


def as_complex(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    _check_square(a)
    return a


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


# --------------------------------------------------------------------------
# symmetric eigenproblem


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition ``a = basis @ diag(eigenvalues) @ basis.T``."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.eigenvalues[..., None, :]) @ np.swapaxes(self.basis, -1, -2)


def _off_norm(a: np.ndarray) -> np.ndarray:
    off = a * (1.0 - np.eye(a.shape[-1]))
    return np.sqrt(np.sum(off * off, axis=(-2, -1)))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # cyclic Jacobi on a stack (n, m, m); every matrix is rotated in lockstep
    a = a.copy()
    n, m, _ = a.shape
    q = np.broadcast_to(np.eye(m), a.shape).copy()
    target = JACOBI_TOL * np.sqrt(np.sum(a * a, axis=(-2, -1)))
    for _ in range(JACOBI_MAX_SWEEPS + 1):
        if np.all(_off_norm(a) <= target):
            break
        for p in range(m - 1):
            for r in range(p + 1, m):
                apr = a[:, p, r]
                active = apr != 0.0
                if not active.any():
                    continue
                with np.errstate(over="ignore", divide="ignore"):
                    theta = (a[:, r, r] - a[:, p, p]) / (2.0 * np.where(active, apr, 1.0))
                    # for huge theta, t ~ 1/(2 theta); avoid squaring it
                    big = np.abs(theta) > 1e150
                    t = np.where(theta >= 0, 1.0, -1.0) / (
                        np.abs(theta) + np.sqrt(np.where(big, 1.0, theta * theta) + 1.0))
                    t = np.where(big, 0.5 / theta, t)
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c1 = c[:, None]
                s1 = s[:, None]
                ap = a[:, :, p].copy()
                ar = a[:, :, r]
                a[:, :, p] = c1 * ap - s1 * ar
                a[:, :, r] = s1 * ap + c1 * ar
                ap = a[:, p, :].copy()
                ar = a[:, r, :]
                a[:, p, :] = c1 * ap - s1 * ar
                a[:, r, :] = s1 * ap + c1 * ar
                a[active, p, r] = 0.0
                a[active, r, p] = 0.0
                qp = q[:, :, p].copy()
                qr = q[:, :, r]
                q[:, :, p] = c1 * qp - s1 * qr
                q[:, :, r] = s1 * qp + c1 * qr
    else:
        raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    w = np.diagonal(a, axis1=-2, axis2=-1).copy()
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    q = np.take_along_axis(q, order[:, None, :], axis=-1)
    return w, q


def sym_eigen(a) -> Spectrum:
    """Eigenvalues (nondecreasing) and orthonormal eigenvectors of symmetric ``a``.

    Accepts a single matrix or a stack ``(..., m, m)``.
    """
    a = as_sym(a)
    shape = a.shape
    w, q = _jacobi(a.reshape(-1, shape[-1], shape[-1]))
    return Spectrum(w.reshape(shape[:-1]), q.reshape(shape))


# --------------------------------------------------------------------------
# complex LU


def _lu(a: np.ndarray):
    # in-place Doolittle LU with partial pivoting on a stack (n, m, m)
    n, m, _ = a.shape
    rows = np.arange(n)
    perm = np.tile(np.arange(m), (n, 1))
    sign = np.ones(n)
    for k in range(m):
        p = k + np.argmax(np.abs(a[:, k:, k]), axis=1)
        swap = p != k
        if swap.any():
            tmp = a[rows, k].copy()
            a[rows, k] = a[rows, p]
            a[rows, p] = tmp
            tmp = perm[rows, k].copy()
            perm[rows, k] = perm[rows, p]
            perm[rows, p] = tmp
            sign[swap] = -sign[swap]
        if k + 1 < m:
            piv = a[:, k, k]
            nz = piv != 0
            lower = a[:, k + 1:, k] / np.where(nz, piv, 1.0)[:, None]
            lower[~nz] = 0.0
            a[:, k + 1:, k] = lower
            a[:, k + 1:, k + 1:] -= lower[:, :, None] * a[:, k, None, k + 1:]
    return a, perm, sign


def complex_det(a) -> complex | np.ndarray:
    """Determinant by pivoted LU; stacks return an array of determinants."""
    a = as_complex(a)
    shape = a.shape
    m = shape[-1]
    lu, _, sign = _lu(a.reshape(-1, m, m).copy())
    det = sign * np.prod(np.diagonal(lu, axis1=-2, axis2=-1), axis=-1)
    if len(shape) == 2:
        return complex(det[0])
    return det.reshape(shape[:-2])


def complex_lu_solve(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` for square ``a`` and matrix or vector ``b``.

    Raises SingularMatrixError when a pivot drops below ``1e-14 * max|a|``.
    Broadcasts over leading stack dimensions of ``a``.
    """
    a = as_complex(a)
    b = np.asarray(b, dtype=complex)
    m = a.shape[-1]
    vector = b.ndim == a.ndim - 1
    if vector:
        b = b[..., None]
    if b.shape[-2] != m:
        raise DimensionError(f"rhs has {b.shape[-2]} rows, matrix has {m}")
    batch = np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    af = np.broadcast_to(a, batch + (m, m)).reshape(-1, m, m).copy()
    bf = np.broadcast_to(b, batch + b.shape[-2:]).reshape(-1, m, b.shape[-1])
    scale = np.max(np.abs(af), axis=(-2, -1))
    lu, perm, _ = _lu(af)
    piv = np.abs(np.diagonal(lu, axis1=-2, axis2=-1))
    if np.any(piv.min(axis=-1) < PIVOT_TOL * scale) or np.any(scale == 0):
        raise SingularMatrixError("matrix is numerically singular")
    rows = np.arange(lu.shape[0])[:, None]
    x = bf[rows, perm].copy()
    for k in range(1, m):
        x[:, k] -= np.einsum("nj,njc->nc", lu[:, k, :k], x[:, :k])
    for k in range(m - 1, -1, -1):
        if k + 1 < m:
            x[:, k] -= np.einsum("nj,njc->nc", lu[:, k, k + 1:], x[:, k + 1:])
        x[:, k] /= lu[:, k, k, None]
    x = x.reshape(batch + (m, bf.shape[-1]))
    return x[..., 0] if vector else x


def inverse(a) -> np.ndarray:
    a = as_complex(a)
    return complex_lu_solve(a, np.eye(a.shape[-1]))


# --------------------------------------------------------------------------
# positive semidefinite helpers


def psd_sqrt(a) -> np.ndarray:
    """Symmetric PSD square root; tiny negative eigenvalues are clamped to zero."""
    spec = sym_eigen(a)
    w = spec.eigenvalues
    bound = PSD_TOL * max_abs(a)
    if np.any(w < -bound):
        raise NotPSDError(f"smallest eigenvalue {w.min():.3e} below -{bound:.3e}")
    root = (spec.basis * np.sqrt(np.maximum(w, 0.0))[..., None, :]) @ np.swapaxes(spec.basis, -1, -2)
    return as_sym(root)


def _sqrt_psd_2x2(a: np.ndarray) -> np.ndarray:
    # sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)) for 2x2 PSD A
    det = np.maximum(a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0], 0.0)
    s = np.sqrt(det)
    t = np.sqrt(np.maximum(a[..., 0, 0] + a[..., 1, 1] + 2 * s, 0.0))
    out = a + s[..., None, None] * np.eye(2)
    safe = np.where(t > 0, t, 1.0)
    return np.where((t > 0)[..., None, None], out / safe[..., None, None], 0.0)


def psd_project(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Project a stack of symmetric matrices onto the PSD cone.

    Returns ``(x, sqrt(x))`` from a single eigen-decomposition per matrix.
    """
    y = np.asarray(y, dtype=float)
    m = y.shape[-1]
    if m == 1:
        x = np.maximum(y, 0.0)
        return x, np.sqrt(x)
    if m == 2:
        y = as_sym(y)
        x = 0.5 * (y + _sqrt_psd_2x2(y @ y))
        return x, _sqrt_psd_2x2(x)
    w, q = _jacobi(as_sym(y).reshape(-1, m, m))
    w = np.maximum(w, 0.0)
    qt = np.swapaxes(q, -1, -2)
    x = (q * w[:, None, :]) @ qt
    root = (q * np.sqrt(w)[:, None, :]) @ qt
    x = 0.5 * (x + np.swapaxes(x, -1, -2))
    root = 0.5 * (root + np.swapaxes(root, -1, -2))
    return x.reshape(y.shape), root.reshape(y.shape)


# --------------------------------------------------------------------------
# elementary algebra with dimension checks


def _same_dim(*mats) -> None:
    dims = {np.shape(x)[-2:] for x in mats}
    if len(dims) != 1:
        raise DimensionError(f"incompatible shapes {[np.shape(x) for x in mats]}")


def trace(a):
    a = np.asarray(a)
    _check_square(a)
    return np.trace(a, axis1=-2, axis2=-1)


def add(a, b) -> np.ndarray:
    _same_dim(a, b)
    return np.asarray(a) + np.asarray(b)


def multiply(a, b) -> np.ndarray:
    _same_dim(a, b)
    return np.asarray(a) @ np.asarray(b)


def scale(a, c) -> np.ndarray:
    return c * np.asarray(a)


def transpose(a) -> np.ndarray:
    return np.swapaxes(np.asarray(a), -1, -2)


def sym_to_complex(a, coeff: complex = 1.0) -> np.ndarray:
    """``coeff * a`` as a complex matrix."""
    return complex(coeff) * as_sym(a).astype(complex)
