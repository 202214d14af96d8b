"""Generative models for bivariate stationary Gaussian triangular arrays.

Three variants:

* ``WeakAR1Model`` couples two AR(1) chains through correlated innovations,
  giving geometrically decaying lag correlations (weak dependence) with the
  within-pair correlation calibrated to the dependence parameter.  O(n).
* ``StrongFactorModel`` adds a shared row-level Gaussian factor so that all
  lagged correlations equal tau_ij / ln(n) (strong dependence).  O(n).
* ``ExplicitModel`` takes arbitrary stationary lag-correlation functions and
  samples through a dense Cholesky factorization (desk-scale n only).

Every sampler is deterministic given a seed lineage; one child stream per
row/replication is part of the contract, so results are identical under any
worker schedule.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import lapack
from scipy.signal import lfilter

from .errors import DomainError, ModelError
from .norming import rho0_from_lambda
from .evd_core import MixtureParams, as_param
from .seeding import SeedLineage, as_lineage

_PAIRS = ((1, 1), (1, 2), (2, 2))

EXPLICIT_MAX_N = 4000  # dense 2n x 2n Cholesky ceiling


@dataclass(frozen=True)
class RowSample:
    """One row of the array: two length-n components plus its seed lineage."""

    n: int
    x1: np.ndarray
    x2: np.ndarray
    seed_lineage: SeedLineage


def _pair(rng_block, rho):
    """Turn two iid standard-normal blocks into a pair with correlation rho."""
    z0, z1 = rng_block
    return z0, rho * z0 + math.sqrt(max(0.0, 1.0 - rho * rho)) * z1


def _ar1_path(phi, start, innovations):
    """Stationary AR(1) path: x_k = phi x_{k-1} + sqrt(1-phi^2) eps_k, x_0 = start."""
    if phi == 0.0:
        return innovations.copy()
    scaled = math.sqrt(1.0 - phi * phi) * innovations
    out, _ = lfilter([1.0], [1.0, -phi], scaled, zi=np.array([phi * start]))
    return out


@dataclass(frozen=True)
class WeakAR1Model:
    """Coupled-innovation AR(1) pair; lag correlations phi^k and rho_0(n) phi^k."""

    lam: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "lam", as_param(self.lam).value)
        phi = float(self.phi)
        if not -1.0 < phi < 1.0:
            raise DomainError(f"phi must lie in (-1, 1), got {phi}")
        object.__setattr__(self, "phi", phi)

    def rho0(self, n: int) -> float:
        # the infinite parameter corresponds to independent components
        if math.isinf(self.lam):
            return 0.0
        return rho0_from_lambda(self.lam, n)

    def min_n(self) -> int:
        """Smallest row size for which rho_0(n) is a valid correlation."""
        if math.isinf(self.lam):
            return 2
        return max(2, math.ceil(math.exp(self.lam * self.lam / 2.0) - 1e-9))

    def validate_n(self, n: int):
        if n < 2:
            raise DomainError(f"row size must be >= 2, got {n}")
        self.rho0(n)

    def lag_corr(self, i, j, k, n):
        base = self.phi**k
        return base if i == j else self.rho0(n) * base

    def lag_corr_array(self, i, j, lags, n):
        base = np.power(float(self.phi), np.asarray(lags, dtype=float))
        return base if i == j else self.rho0(n) * base

    def _sample(self, n, rng):
        # draw layout: one (2, n+1) normal block; column 0 seeds the
        # stationary start, columns 1..n are the innovations
        rho0 = self.rho0(n)
        e1, e2 = _pair(rng.standard_normal((2, n + 1)), rho0)
        x1 = _ar1_path(self.phi, e1[0], e1[1:])
        x2 = _ar1_path(self.phi, e2[0], e2[1:])
        return x1, x2


@dataclass(frozen=True)
class StrongFactorModel:
    """Shared-factor construction with constant lagged correlations tau_ij / ln(n)."""

    mix: MixtureParams

    def taus(self, n: int) -> tuple[float, float, float]:
        ell = math.log(n)
        return (self.mix.tau11 / ell, self.mix.tau22 / ell, self.mix.tau12 / ell)

    def rho0(self, n: int) -> float:
        return rho0_from_lambda(self.mix.lam, n)

    def residual_corr(self, n: int) -> float:
        t11, t22, t12 = self.taus(n)
        return (self.rho0(n) - t12) / math.sqrt((1.0 - t11) * (1.0 - t22))

    def min_n(self) -> int:
        n = max(2, math.ceil(math.exp(max(self.mix.tau11, self.mix.tau22))))
        while n < 10**9:
            try:
                self.validate_n(n)
                return n
            except DomainError:
                n += 1
        raise DomainError("no valid row size below 1e9")

    def validate_n(self, n: int):
        if n < 2:
            raise DomainError(f"row size must be >= 2, got {n}")
        ell = math.log(n)
        if ell <= max(self.mix.tau11, self.mix.tau22):
            raise DomainError(
                f"ln(n)={ell:g} must exceed max(tau11, tau22)="
                f"{max(self.mix.tau11, self.mix.tau22):g}"
            )
        r = self.residual_corr(n)
        if not -1.0 <= r <= 1.0:
            raise DomainError(f"residual correlation {r:g} outside [-1, 1] at n={n}")

    def lag_corr(self, i, j, k, n):
        t11, t22, t12 = self.taus(n)
        return {(1, 1): t11, (2, 2): t22}.get((i, j), t12)

    def lag_corr_array(self, i, j, lags, n):
        return np.full(np.shape(lags), self.lag_corr(i, j, 1, n))

    def _sample(self, n, rng):
        # draw layout: one factor pair block (2,), then a (2, n) residual block
        t11, t22, _ = self.taus(n)
        z0_1, z0_2 = _pair(rng.standard_normal(2), self.mix.rho_zw)
        r1, r2 = _pair(rng.standard_normal((2, n)), self.residual_corr(n))
        x1 = math.sqrt(t11) * z0_1 + math.sqrt(1.0 - t11) * r1
        x2 = math.sqrt(t22) * z0_2 + math.sqrt(1.0 - t22) * r2
        return x1, x2


@dataclass(frozen=True)
class ExplicitModel:
    """Arbitrary stationary correlation structure, sampled via dense Cholesky.

    ``rho0_fn(n)`` gives the within-pair correlation; ``rho_fn(i, j, k, n)``
    the lag-k correlation of components i and j.  Positive semi-definiteness
    is checked at sampling time; failures raise ModelError with the failing
    leading minor (no silent repair).
    """

    rho0_fn: Callable[[int], float]
    rho_fn: Callable[[int, int, int, int], float]
    label: str = "explicit"

    def rho0(self, n: int) -> float:
        return float(self.rho0_fn(n))

    def min_n(self) -> int:
        return 2

    def validate_n(self, n: int):
        if n < 2:
            raise DomainError(f"row size must be >= 2, got {n}")
        if n > EXPLICIT_MAX_N:
            raise DomainError(
                f"explicit models are capped at n={EXPLICIT_MAX_N} "
                f"(dense 2n x 2n Cholesky), got {n}"
            )

    def lag_corr(self, i, j, k, n):
        return float(self.rho_fn(i, j, k, n))

    def lag_corr_array(self, i, j, lags, n):
        return np.array([self.rho_fn(i, j, int(k), n) for k in np.asarray(lags).ravel()])

    def correlation_matrix(self, n: int) -> np.ndarray:
        """Interleaved 2n x 2n correlation matrix (index 2k+i-1 is X_k^(i))."""
        by_lag = {}
        for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)):
            vals = np.empty(n)
            vals[0] = 1.0 if i == j else self.rho0(n)
            for k in range(1, n):
                vals[k] = self.rho_fn(i, j, k, n)
            by_lag[i, j] = vals
        lag = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
        sigma = np.empty((2 * n, 2 * n))
        for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)):
            sigma[i - 1 :: 2, j - 1 :: 2] = by_lag[i, j][lag]
        return sigma

    def _sample(self, n, rng):
        chol = _explicit_factor(self, n)
        v = chol @ rng.standard_normal(2 * n)
        return v[0::2].copy(), v[1::2].copy()


@lru_cache(maxsize=8)
def _explicit_factor(model: ExplicitModel, n: int) -> np.ndarray:
    sigma = model.correlation_matrix(n)
    c, info = lapack.dpotrf(sigma, lower=1)
    if info > 0:
        raise ModelError(
            f"correlation matrix of model {model.label!r} at n={n} is not "
            f"positive definite: leading minor of order {info} fails",
            minor_index=int(info),
        )
    if info < 0:
        raise ModelError(f"dpotrf rejected argument {-info}")
    return np.tril(c)


ArrayModel = WeakAR1Model | StrongFactorModel | ExplicitModel


def sample_row(model: ArrayModel, n: int, seed) -> RowSample:
    """Sample one row of the triangular array; bit-identical for equal seeds."""
    lineage = as_lineage(seed)
    model.validate_n(int(n))
    x1, x2 = model._sample(int(n), lineage.generator())
    return RowSample(n=int(n), x1=x1, x2=x2, seed_lineage=lineage)


def induced_correlation(model: ArrayModel, i: int, j: int, k: int, n: int) -> float:
    """Exact model correlation of X_s^(i) and X_{s+k}^(j) within row n."""
    if i not in (1, 2) or j not in (1, 2):
        raise DomainError(f"component indices must be 1 or 2, got ({i}, {j})")
    k = int(k)
    if k < 0 or k >= int(n):
        raise DomainError(f"lag must satisfy 0 <= k < n, got k={k}, n={n}")
    if k == 0:
        return 1.0 if i == j else model.rho0(int(n))
    return float(model.lag_corr(i, j, k, int(n)))


def row_extremes(row: RowSample) -> tuple[float, float, float, float]:
    """Componentwise (max1, max2, min1, min2) of a row."""
    if row.n < 1:
        raise DomainError("row must be non-empty")
    return (
        float(np.max(row.x1)),
        float(np.max(row.x2)),
        float(np.min(row.x1)),
        float(np.min(row.x2)),
    )


@dataclass(frozen=True)
class AssumptionReport:
    """Evaluation of a dependence-decay assumption along a grid of row sizes.

    For the weak (Berman-type) assumption the per-n statistic is
    max_{cutoff <= k < n} |rho_ij(k, n)| ln(n); for the strong-dependence
    assumption it is max_{cutoff <= k < n} |rho_ij(k, n) ln(k) - tau_ij|.
    ``decaying`` is True when the statistic strictly decreases over the last
    three grid points.
    """

    assumption: str
    n_grid: tuple[int, ...]
    sigma_or_delta: float
    alpha_or_varpi: float
    cutoff: tuple[int, ...]
    statistic: tuple[float, ...]
    decaying: bool


def _scan_abs_corr(model, n):
    lags = np.arange(1, n)
    worst = 0.0
    for i, j in _PAIRS:
        worst = max(worst, float(np.max(np.abs(model.lag_corr_array(i, j, lags, n)))))
    return worst


def validate_assumption(model: ArrayModel, which: str, n_grid, alpha: float,
                        tau=None) -> AssumptionReport:
    """Evaluate assumption "A1" (weak) or "A2" (strong) on a grid of row sizes.

    ``alpha`` is the cutoff exponent (cutoff = floor(n^alpha)); it must lie in
    (0, (1 - s) / (1 + s)) where s is the largest absolute lag correlation
    scanned at the largest grid n.  For A2, ``tau`` supplies (tau11, tau12,
    tau22); it defaults to the model's own mixture constants when present.
    """
    if which not in ("A1", "A2"):
        raise DomainError(f"assumption must be 'A1' or 'A2', got {which!r}")
    n_grid = tuple(int(n) for n in n_grid)
    if not n_grid or any(n < 2 for n in n_grid) or list(n_grid) != sorted(set(n_grid)):
        raise DomainError("n_grid must be a non-empty strictly increasing list of ints >= 2")
    # Explicit models are exempt from the sampling ceiling here: the scan
    # only evaluates correlations, never a Cholesky factor
    if not isinstance(model, ExplicitModel):
        for n in n_grid:
            model.validate_n(n)

    bound = _scan_abs_corr(model, max(n_grid))
    if bound >= 1.0:
        raise DomainError(f"lag correlations must stay below 1, scan found {bound}")
    admissible = (1.0 - bound) / (1.0 + bound)
    alpha = float(alpha)
    if not 0.0 < alpha < admissible:
        raise DomainError(
            f"alpha={alpha:g} outside the admissible range (0, {admissible:g}) "
            f"implied by the dependence bound {bound:g}"
        )

    if which == "A2":
        if tau is None:
            if isinstance(model, StrongFactorModel):
                tau = (model.mix.tau11, model.mix.tau12, model.mix.tau22)
            else:
                raise DomainError("A2 needs tau=(tau11, tau12, tau22) for this model")
        tau_by_pair = {(1, 1): float(tau[0]), (1, 2): float(tau[1]), (2, 2): float(tau[2])}

    cutoffs, stats = [], []
    for n in n_grid:
        cut = max(1, int(math.floor(n**alpha)))
        lags = np.arange(cut, n)
        stat = 0.0
        for i, j in _PAIRS:
            rho = np.asarray(model.lag_corr_array(i, j, lags, n), dtype=float)
            if which == "A1":
                stat = max(stat, float(np.max(np.abs(rho))) * math.log(n))
            else:
                # ln(k) * |rho - tau/ln(k)| == |rho ln(k) - tau| in exact
                # arithmetic; this form keeps the cancellation exact when the
                # model's correlations are themselves defined as tau / ln(k)
                logs = np.log(lags.astype(float))
                dev = logs * np.abs(rho - tau_by_pair[i, j] / logs)
                stat = max(stat, float(np.max(dev)))
        cutoffs.append(cut)
        stats.append(stat)

    decaying = len(stats) >= 3 and stats[-3] > stats[-2] > stats[-1]
    return AssumptionReport(
        assumption=which,
        n_grid=n_grid,
        sigma_or_delta=bound,
        alpha_or_varpi=alpha,
        cutoff=tuple(cutoffs),
        statistic=tuple(stats),
        decaying=decaying,
    )
