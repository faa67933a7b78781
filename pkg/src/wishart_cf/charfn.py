"""Characteristic function and Fourier-Laplace transform of the Wishart law.

All evaluators share one orientation. For a strip point ``z = u - i v`` with
``u > -I/2`` the log-transform is

    phi(z) = alpha * int_0^1 tr((I + 2 t z)^{-1} (2 z)) dt

and the transform is ``exp(-phi(z))``. At ``u = 0`` this is the familiar
``exp(alpha * int_0^1 tr((I - 2 t i v)^{-1} (2 i v)) dt)``. The integral is a
continuously tracked ``log det(I + 2 z)``, so it picks the right sheet of the
logarithm automatically, which the principal-branch power
``det(I - 2 i v) ** -alpha`` does not once m >= 3.

Four methods are offered:

* ``naive_cf``      principal-branch determinant power (kept as a baseline)
* ``cf_quadrature`` adaptive Gauss-Kronrod on the trace integral
* ``cf_spectral``   eigenvalue-wise principal logs (exact for commuting u, v)
* ``cf_path``       argument tracking of t -> det(I - 2 t i v)
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg, quadrature
from .distribution import ShapeParam
from .exceptions import (
    DimensionError,
    DomainError,
    RefinementBudgetError,
    SingularMatrixError,
    StripViolationError,
)

__all__ = [
    "Method", "StripPoint", "TransformResult", "PathScan", "ShapeParam",
    "principal_log", "principal_arg", "naive_cf", "cf_quadrature", "cf_spectral",
    "cf_path", "evaluate", "psi_closed", "phi_closed", "scan_ray",
    "DEFAULT_TOL",
]

DEFAULT_TOL = float(os.environ.get("WISHART_DEFAULT_TOL", "1e-11"))
MIN_TOL = 1e-13
CUT_SNAP = 1e-12
COMMUTE_TOL = 1e-12
WINDING_GUARD = 0.1
PATH_STEP_LIMIT = math.pi / 2
PATH_MAX_STEPS = 2 ** 20
_PATH_CHUNK = 1 << 14


class Method(str, Enum):
    NAIVE = "naive"
    QUADRATURE = "quadrature"
    SPECTRAL = "spectral"
    PATH = "path"


@dataclass(frozen=True)
class TransformResult:
    value: complex
    method: Method
    quad_error: float = 0.0
    winding: int = 0

    def as_dict(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "method": self.method.value,
            "quad_error": self.quad_error,
            "winding": self.winding,
        }


@dataclass(frozen=True)
class StripPoint:
    """The point ``u - i v``; requires the smallest eigenvalue of u to exceed -1/2."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = linalg.as_sym(self.u)
        v = linalg.as_sym(self.v)
        if u.shape != v.shape:
            raise DimensionError(f"u is {u.shape}, v is {v.shape}")
        lam_min = linalg.sym_eigen(u).eigenvalues[0]
        if not lam_min > -0.5:
            raise StripViolationError(f"smallest eigenvalue of u is {lam_min:.6g} <= -1/2")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @classmethod
    def fourier(cls, v) -> "StripPoint":
        v = linalg.as_sym(v)
        return cls(np.zeros_like(v), v)

    @property
    def dim(self) -> int:
        return self.u.shape[-1]

    @property
    def z(self) -> np.ndarray:
        return self.u - 1j * self.v

    @property
    def is_fourier(self) -> bool:
        return not np.any(self.u)


@dataclass(frozen=True)
class PathScan:
    """Naive and correct transform values along the ray ``s -> s * v``."""

    s: np.ndarray
    naive: np.ndarray
    correct: np.ndarray
    winding: np.ndarray

    @property
    def abs_diff(self) -> np.ndarray:
        return np.abs(self.naive - self.correct)


# --------------------------------------------------------------------------
# principal branch with an explicit convention on the cut


def principal_arg(z: complex) -> float:
    """Argument in (-pi, pi].

    Values within ``1e-12 * |z|`` of the negative real axis are placed on it
    (argument +pi); without this, rounding decides the sheet for points such
    as (1 - i sqrt 3)^3 = -8.
    """
    z = complex(z)
    if z.real < 0 and abs(z.imag) <= CUT_SNAP * abs(z):
        return math.pi
    return cmath.phase(z)


def principal_log(z: complex) -> complex:
    return complex(math.log(abs(z)), principal_arg(z))


def _winding(tracked_arg: float, endpoint: complex) -> int:
    resid = (tracked_arg - principal_arg(endpoint)) / (2 * math.pi)
    w = round(resid)
    if abs(resid - w) >= WINDING_GUARD:
        raise ArithmeticError(f"winding residual {resid:.3f} is not near an integer")
    return int(w)


def _check_dim(mat: np.ndarray, p: ShapeParam) -> None:
    if mat.shape[-1] != p.dim:
        raise DimensionError(f"matrix is {mat.shape[-1]}x{mat.shape[-1]}, shape param has m={p.dim}")


def _check_ostrowski_taussky(pt: StripPoint) -> None:
    # |det(X + iY)| >= det(X) for X positive definite; X = I + 2u here
    x = np.eye(pt.dim) + 2 * pt.u
    lower = float(np.prod(linalg.sym_eigen(x).eigenvalues))
    got = abs(linalg.complex_det(x - 2j * pt.v))
    if got < lower * (1 - 1e-10):
        raise StripViolationError(f"|det| = {got:.6g} below det(I+2u) = {lower:.6g}")


# --------------------------------------------------------------------------
# evaluators


def naive_cf(v, p: ShapeParam) -> TransformResult:
    """exp(-alpha * Log det(I - 2 i v)) with the principal logarithm."""
    v = linalg.as_sym(v)
    _check_dim(v, p)
    d = linalg.complex_det(np.eye(p.dim) - 2j * v)
    return TransformResult(cmath.exp(-p.alpha * principal_log(d)), Method.NAIVE)


def log_det_integral(pt: StripPoint, tol: float = DEFAULT_TOL) -> tuple[complex, float]:
    """int_0^1 tr((I + 2 t z)^{-1} 2 z) dt, a continuous branch of log det(I + 2 z)."""
    m = pt.dim
    z2 = 2 * pt.z
    eye = np.eye(m)

    def integrand(t):
        pencil = eye + t[:, None, None] * z2
        try:
            sol = linalg.complex_lu_solve(pencil, np.broadcast_to(z2, pencil.shape))
        except SingularMatrixError as exc:
            raise StripViolationError(str(exc)) from exc
        return np.trace(sol, axis1=-2, axis2=-1)

    return quadrature.integrate(integrand, 0.0, 1.0, tol=tol)


def cf_quadrature(pt: StripPoint, p: ShapeParam, tol: float = DEFAULT_TOL) -> TransformResult:
    if tol < MIN_TOL:
        raise ValueError(f"tol must be >= {MIN_TOL}")
    _check_dim(pt.u, p)
    _check_ostrowski_taussky(pt)
    integral, err = log_det_integral(pt, tol)
    value = cmath.exp(-p.alpha * integral)
    endpoint = linalg.complex_det(np.eye(pt.dim) + 2 * pt.z)
    return TransformResult(value, Method.QUADRATURE, err, _winding(integral.imag, endpoint))


def _joint_diagonalize(u: np.ndarray, v: np.ndarray):
    """Common eigenbasis of commuting u and v, or None."""
    norm = 1 + linalg.max_abs(u) * linalg.max_abs(v)
    if linalg.max_abs(u @ v - v @ u) > COMMUTE_TOL * norm:
        return None
    if not np.any(u):
        spec = linalg.sym_eigen(v)
        return np.zeros(v.shape[-1]), spec.eigenvalues
    # a generic combination separates the joint eigenspaces
    q = linalg.sym_eigen(u + 0.5772156649015329 * v).basis
    mu = np.einsum("ji,jk,ki->i", q, u, q)
    lam = np.einsum("ji,jk,ki->i", q, v, q)
    for mat, diag in ((u, mu), (v, lam)):
        if linalg.max_abs((q * diag) @ q.T - mat) > 1e-10 * (1 + linalg.max_abs(mat)):
            return None
    return mu, lam


def cf_spectral(pt: StripPoint, p: ShapeParam, tol: float = DEFAULT_TOL) -> TransformResult:
    """Product of scalar principal powers over joint eigenvalues.

    Each factor 1 + 2 t (mu - i lam) has positive real part on [0, 1], so the
    principal log of every factor is the continuous one. Non-commuting (u, v)
    fall back to the quadrature evaluator, tagged as such.
    """
    _check_dim(pt.u, p)
    joint = _joint_diagonalize(pt.u, pt.v)
    if joint is None:
        return cf_quadrature(pt, p, tol)
    mu, lam = joint
    factors = 1 + 2 * mu - 2j * lam
    logs = np.log(factors)  # Re > 0: principal branch is safe
    value = cmath.exp(-p.alpha * complex(np.sum(logs)))
    tracked = float(np.sum(logs.imag))
    endpoint = complex(np.prod(factors))
    return TransformResult(value, Method.SPECTRAL, 0.0, _winding(tracked, endpoint))


def _det_path(v: np.ndarray, steps: int) -> np.ndarray:
    m = v.shape[-1]
    t = np.linspace(0.0, 1.0, steps + 1)
    out = np.empty(steps + 1, dtype=complex)
    for start in range(0, steps + 1, _PATH_CHUNK):
        tt = t[start:start + _PATH_CHUNK]
        out[start:start + tt.size] = linalg.complex_det(np.eye(m) - 2j * tt[:, None, None] * v)
    return out


def cf_path(v, p: ShapeParam, steps: int = 64) -> TransformResult:
    """Track arg det(I - 2 t i v) over t in [0, 1], refining until every step
    turns by less than pi/2."""
    if steps < 16:
        raise ValueError("steps must be >= 16")
    v = linalg.as_sym(v)
    _check_dim(v, p)
    while True:
        d = _det_path(v, steps)
        darg = np.angle(d[1:] / d[:-1])
        if np.all(np.abs(darg) < PATH_STEP_LIMIT):
            break
        steps *= 2
        if steps > PATH_MAX_STEPS:
            raise RefinementBudgetError(f"argument tracking needs more than {PATH_MAX_STEPS} steps")
    total = float(np.sum(darg))
    end = complex(d[-1])
    value = abs(end) ** -p.alpha * cmath.exp(-1j * p.alpha * total)
    return TransformResult(value, Method.PATH, 0.0, _winding(total, end))


def evaluate(v, p: ShapeParam, method: Method | str = Method.QUADRATURE,
             tol: float = DEFAULT_TOL, u=None) -> TransformResult:
    """Dispatch on ``method``; ``u`` (default 0) only applies to quadrature and spectral."""
    method = Method(method)
    v = linalg.as_sym(v)
    if method is Method.NAIVE or method is Method.PATH:
        if u is not None and np.any(u):
            raise ValueError(f"method {method.value} only evaluates the Fourier case u = 0")
        return naive_cf(v, p) if method is Method.NAIVE else cf_path(v, p)
    pt = StripPoint.fourier(v) if u is None else StripPoint(u, v)
    if method is Method.QUADRATURE:
        return cf_quadrature(pt, p, tol)
    return cf_spectral(pt, p, tol)


# --------------------------------------------------------------------------
# affine coefficients of the Wishart process started at zero


def psi_closed(t: float, u) -> np.ndarray:
    """(I + 2 t u)^{-1} u, solving d/dt psi = -2 psi^2 with psi(0) = u."""
    u = linalg.as_sym(u)
    sol = linalg.complex_lu_solve(np.eye(u.shape[-1]) + 2 * t * u, u).real
    return linalg.as_sym(0.5 * (sol + sol.T))


def phi_closed(t: float, u, p: ShapeParam) -> float:
    """alpha * log det(I + 2 t u)."""
    u = linalg.as_sym(u)
    _check_dim(u, p)
    w = linalg.sym_eigen(np.eye(p.dim) + 2 * t * u).eigenvalues
    if w[0] <= 0:
        raise DomainError("det(I + 2tu) is not positive")
    return p.alpha * float(np.sum(np.log(w)))


# --------------------------------------------------------------------------


def scan_ray(v, p: ShapeParam, s_max: float, n_points: int) -> PathScan:
    """Naive and spectral values on the ray s * v for s in [0, s_max]."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    v = linalg.as_sym(v)
    _check_dim(v, p)
    s = np.linspace(0.0, s_max, n_points)
    naive = np.empty(n_points, dtype=complex)
    correct = np.empty(n_points, dtype=complex)
    winding = np.empty(n_points, dtype=int)
    for k, sk in enumerate(s):
        vk = sk * v
        naive[k] = naive_cf(vk, p).value
        res = cf_spectral(StripPoint.fourier(vk), p)
        correct[k] = res.value
        winding[k] = res.winding
    return PathScan(s, naive, correct, winding)
