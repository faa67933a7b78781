"""Wishart law with identity scale: admissible shapes, density, exact samplers and
a Monte Carlo estimate of the characteristic function.

Sampling is reproducible: every public sampler takes an explicit integer seed,
and large draws are split into fixed-size shards whose generators are derived
from ``(seed, shard_index)``. Results therefore do not depend on how shards are
scheduled across workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from . import linalg
from .exceptions import DimensionError, DomainError, ShapeError

HALF_INT_TOL = 1e-12
SHARD_SIZE = 10_000


def _is_half_integer(alpha: float) -> bool:
    return abs(2.0 * alpha - round(2.0 * alpha)) <= 2.0 * HALF_INT_TOL


def gindikin_contains(alpha: float, m: int) -> bool:
    """Whether a Wishart law with shape ``alpha`` exists on m x m matrices.

    The admissible set is {1/2, 1, ..., (m-2)/2} together with [(m-1)/2, inf).
    """
    if m < 1:
        raise ValueError("dimension must be positive")
    if not math.isfinite(alpha) or alpha <= 0:
        return False
    if alpha >= (m - 1) / 2 - HALF_INT_TOL:
        return True
    return _is_half_integer(alpha) and 1 <= round(2 * alpha) <= m - 2


@dataclass(frozen=True)
class ShapeParam:
    alpha: float
    dim: int

    def __post_init__(self):
        if not gindikin_contains(self.alpha, self.dim):
            raise ShapeError(
                f"alpha={self.alpha} is not in the Gindikin set for m={self.dim}: "
                f"{{1/2, ..., {(self.dim - 2) / 2:g}}} U [{(self.dim - 1) / 2:g}, inf)")

    @property
    def degrees_of_freedom(self) -> float:
        return 2.0 * self.alpha

    @property
    def has_density(self) -> bool:
        return self.alpha > (self.dim - 1) / 2


@dataclass(frozen=True)
class WishartSample:
    matrix: np.ndarray
    rank_hint: int


@dataclass(frozen=True)
class MCEstimate:
    value: complex
    std_error: float
    n_samples: int
    seed: int
    se_re: float = field(default=0.0)
    se_im: float = field(default=0.0)

    def z_scores(self, target: complex) -> tuple[float, float]:
        """Componentwise (real, imag) z-scores of ``target`` against this estimate."""
        def z(diff, se):
            if diff == 0:
                return 0.0
            return math.inf if se == 0 else abs(diff) / se
        d = self.value - complex(target)
        return z(d.real, self.se_re), z(d.imag, self.se_im)


# --------------------------------------------------------------------------
# density


def log_multigamma(alpha: float, m: int) -> float:
    """log of the multivariate gamma function Gamma_m(alpha)."""
    j = np.arange(m)
    return m * (m - 1) / 4 * math.log(math.pi) + float(np.sum(gammaln(alpha - j / 2)))


def log_density(xi, p: ShapeParam) -> float:
    alpha, m = p.alpha, p.dim
    if not p.has_density:
        raise DomainError(f"no density for alpha={alpha} <= (m-1)/2={(m - 1) / 2}")
    xi = linalg.as_sym(xi)
    if xi.shape[-1] != m:
        raise DimensionError(f"sample is {xi.shape[-1]}x{xi.shape[-1]}, shape param has m={m}")
    w = linalg.sym_eigen(xi).eigenvalues
    if w[0] <= 0:
        raise DomainError("xi is not positive definite")
    logdet = float(np.sum(np.log(w)))
    return ((alpha - (m + 1) / 2) * logdet - np.trace(xi) / 2
            - m * alpha * math.log(2.0) - log_multigamma(alpha, m))


# --------------------------------------------------------------------------
# samplers


def _generator(seed: int, shard: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), shard]))


def _outer_batch(alpha: float, m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    k = int(round(2 * alpha))
    x = rng.standard_normal((n, m, k))
    return x @ np.swapaxes(x, -1, -2)


def _bartlett_batch(alpha: float, m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    low = np.zeros((n, m, m))
    df = 2 * alpha - np.arange(m)
    low[:, np.arange(m), np.arange(m)] = np.sqrt(rng.chisquare(df, size=(n, m)))
    rows, cols = np.tril_indices(m, -1)
    low[:, rows, cols] = rng.standard_normal((n, rows.size))
    return low @ np.swapaxes(low, -1, -2)


def _require_outer(p: ShapeParam) -> None:
    if not _is_half_integer(p.alpha):
        raise ShapeError(f"outer-product sampler needs 2*alpha integral, got alpha={p.alpha}")


def _require_bartlett(p: ShapeParam) -> None:
    if not p.has_density:
        raise ShapeError(f"Bartlett sampler needs alpha > (m-1)/2, got alpha={p.alpha}, m={p.dim}")


def sample_outer(p: ShapeParam, rng_seed: int) -> WishartSample:
    """Sum of ``2 * alpha`` outer products of standard normal vectors."""
    _require_outer(p)
    xi = _outer_batch(p.alpha, p.dim, 1, _generator(rng_seed))[0]
    return WishartSample(linalg.as_sym(xi), min(p.dim, int(round(2 * p.alpha))))


def sample_bartlett(p: ShapeParam, rng_seed: int) -> WishartSample:
    _require_bartlett(p)
    xi = _bartlett_batch(p.alpha, p.dim, 1, _generator(rng_seed))[0]
    return WishartSample(linalg.as_sym(xi), p.dim)


def sample_many(p: ShapeParam, n: int, seed: int, method: str = "auto",
                workers: int = 1) -> np.ndarray:
    """Draw ``n`` samples as an array ``(n, m, m)``.

    ``method`` is ``"outer"``, ``"bartlett"`` or ``"auto"`` (outer whenever
    ``2 * alpha`` is an integer). Output is identical for any ``workers``.
    """
    if method == "auto":
        method = "outer" if _is_half_integer(p.alpha) else "bartlett"
    if method == "outer":
        _require_outer(p)
        draw = _outer_batch
    elif method == "bartlett":
        _require_bartlett(p)
        draw = _bartlett_batch
    else:
        raise ValueError(f"unknown sampler {method!r}")
    sizes = [min(SHARD_SIZE, n - start) for start in range(0, n, SHARD_SIZE)]

    def shard(i):
        return draw(p.alpha, p.dim, sizes[i], _generator(seed, i))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(shard, range(len(sizes))))
    else:
        parts = [shard(i) for i in range(len(sizes))]
    return np.concatenate(parts) if parts else np.zeros((0, p.dim, p.dim))


def mean_with_error(values: np.ndarray, seed: int) -> MCEstimate:
    """Sample mean of complex ``values`` with componentwise standard errors."""
    n = values.size
    mean = complex(values.mean())
    if n > 1:
        se_re = float(values.real.std(ddof=1) / math.sqrt(n))
        se_im = float(values.imag.std(ddof=1) / math.sqrt(n))
    else:
        se_re = se_im = math.inf
    return MCEstimate(mean, max(se_re, se_im), n, seed, se_re, se_im)


def mc_charfn(v, p: ShapeParam, n: int, rng_seed: int, workers: int = 1) -> MCEstimate:
    """Monte Carlo estimate of E[exp(i tr(v xi))]."""
    v = linalg.as_sym(v)
    if v.shape[-1] != p.dim:
        raise DimensionError(f"v is {v.shape[-1]}x{v.shape[-1]}, shape param has m={p.dim}")
    if n < 100:
        raise ValueError("need at least 100 samples")
    xi = sample_many(p, n, rng_seed, workers=workers)
    phase = np.einsum("jk,njk->n", v, xi)
    return mean_with_error(np.exp(1j * phase), rng_seed)
