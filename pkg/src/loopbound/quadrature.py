"""Deterministic quadrature over [0, 2pi]^n for lattice dispersion integrands.

Two methods are provided:

* ``tensor-chebyshev``: a tensor product of n-point midpoint rules in the
  angle variable, equivalently Gauss-Chebyshev quadrature in x_j = cos(k_j).
  It is exact for trigonometric polynomials cos(l k_j) up to degree 2n-1
  per axis and is the default for dimension <= 5.  The error estimate comes
  from node doubling: the rule is re-evaluated with 2n, 4n, ... nodes per
  axis until two consecutive levels agree to the target or the evaluation
  budget is exhausted.  The tensor path assumes integrands even in each
  axis (f depends on k_j only through cos(l k_j)), which holds for every
  integrand in this package.

* ``quasi-monte-carlo``: scrambled Sobol points, split over 16 independent
  scramblings; the error estimate is the standard error of the 16 replicate
  means.  Used for dimension > 5 and for all 2d-dimensional integrals.

Both methods return the normalized average over the box, i.e. the factor
(2pi)^-n is included, and neither places nodes at k = 0, so integrable
singularities at the corners of the box are sampled but never hit exactly.

The weight 1/eps(k) with eps(k) = 2 sum_j (1 - cos k_j) is handled by
``integrate_inverse_epsilon``: when the numerator does not vanish at k = 0
the singular mass is split off analytically as a multiple of the Watson
integral W_d = int dk/(2pi)^d / eps(k), itself evaluated through the
exponential-Bessel representation W_d = int_0^inf exp(-2dt) I_0(2t)^d dt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy import integrate as _sciint
from scipy import special as _special
from scipy.stats import qmc as _qmc

from .errors import DivergenceError, DomainError, EvaluationFailureError

TENSOR = "tensor-chebyshev"
QMC = "quasi-monte-carlo"

# Streaming chunk for tensor grids; fixed so summation order is reproducible.
_CHUNK = 1 << 18
# Cap on the point count of a single tensor level / a single QMC run.
_MAX_LEVEL_EVALS = 22_000_000
_N_SCRAMBLE = 16


@dataclass(frozen=True)
class QuadratureSpec:
    """Parameters that pin down a quadrature rule bit-for-bit.

    ``nodes_per_axis`` applies to the tensor method (coarsest level; the
    rule doubles from there), ``sample_count`` to QMC (total points across
    the 16 scramblings, rounded up so each scrambling gets a power of two).
    The same spec and seed always produce the identical result for the
    same integrand.
    """

    method: str = TENSOR
    nodes_per_axis: int = 16
    sample_count: int = 1 << 20
    seed: int = 0
    target_abs_error: float = 5e-4

    def __post_init__(self):
        if self.method not in (TENSOR, QMC):
            raise DomainError(f"unknown quadrature method {self.method!r}")
        if self.nodes_per_axis < 2:
            raise DomainError("nodes_per_axis must be >= 2")
        if self.sample_count < 1:
            raise DomainError("sample_count must be >= 1")
        if not self.target_abs_error > 0:
            raise DomainError("target_abs_error must be positive")

    def tightened(self, factor: float) -> "QuadratureSpec":
        """Spec with the error target divided by ``factor`` (and more points)."""
        return replace(
            self,
            target_abs_error=self.target_abs_error / factor,
            sample_count=self.sample_count * 4,
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.abs_error_estimate < 0:
            raise DomainError("abs_error_estimate must be nonnegative")


def default_spec(dim: int, seed: int = 0, target_abs_error: float = 5e-4) -> QuadratureSpec:
    """Reasonable defaults: tensor rules up to dimension 5, QMC beyond.

    Starting resolutions shrink with dimension so the doubled level stays
    inside the evaluation budget.
    """
    if dim <= 5:
        nodes = {1: 1024, 2: 256, 3: 48, 4: 16, 5: 10}[max(dim, 1)]
        return QuadratureSpec(TENSOR, nodes_per_axis=nodes, seed=seed,
                              target_abs_error=target_abs_error)
    return QuadratureSpec(QMC, sample_count=1 << 20, seed=seed,
                          target_abs_error=target_abs_error)


def chebyshev_angles(n: int) -> np.ndarray:
    """Midpoint angles pi(2i-1)/(2n) on (0, pi); cosines are Chebyshev nodes."""
    return np.pi * (2.0 * np.arange(1, n + 1) - 1.0) / (2.0 * n)


def tensor_points(dim: int, n: int, chunk: int = _CHUNK):
    """Yield the n^dim tensor grid of Chebyshev angles in fixed row-major order."""
    nodes = chebyshev_angles(n)
    total = n**dim
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        pts = np.empty((idx.size, dim))
        rem = idx
        for j in range(dim):
            pts[:, dim - 1 - j] = nodes[rem % n]
            rem = rem // n
        yield pts


def sobol_points(dim: int, m: int, seed_child) -> np.ndarray:
    """2^m scrambled Sobol points scaled to [0, 2pi]^dim."""
    eng = _qmc.Sobol(dim, scramble=True, rng=np.random.default_rng(seed_child))
    return 2.0 * np.pi * eng.random_base2(m)


def _checked(values: np.ndarray, pts: np.ndarray) -> np.ndarray:
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationFailureError(
            f"integrand returned {values[i]!r} at node {pts[i].tolist()}",
            node=pts[i].copy(),
        )
    return values


def _tensor_level_mean(f, dim: int, n: int) -> float:
    sums = []
    for pts in tensor_points(dim, n):
        sums.append(float(np.sum(_checked(np.asarray(f(pts), dtype=float), pts))))
    return math.fsum(sums) / n**dim


def _integrate_tensor(f, dim: int, spec: QuadratureSpec) -> QuadratureResult:
    n = spec.nodes_per_axis
    value_prev = _tensor_level_mean(f, dim, n)
    evals = n**dim
    while True:
        n2 = 2 * n
        value = _tensor_level_mean(f, dim, n2)
        evals += n2**dim
        err = abs(value - value_prev)
        if err <= spec.target_abs_error or (2 * n2) ** dim > _MAX_LEVEL_EVALS:
            return QuadratureResult(value, err, evals)
        n, value_prev = n2, value


def _qmc_replicates(f, dim: int, spec: QuadratureSpec, sample_count: int, level: int):
    m = max(6, math.ceil(math.log2(max(sample_count // _N_SCRAMBLE, 1))))
    children = np.random.SeedSequence(spec.seed).spawn((level + 1) * _N_SCRAMBLE)
    means = []
    for child in children[level * _N_SCRAMBLE:]:
        pts = sobol_points(dim, m, child)
        means.append(float(np.mean(_checked(np.asarray(f(pts), dtype=float), pts))))
    return np.array(means), _N_SCRAMBLE * (1 << m)


def _integrate_qmc(f, dim: int, spec: QuadratureSpec) -> QuadratureResult:
    count = spec.sample_count
    evals = 0
    level = 0
    while True:
        means, used = _qmc_replicates(f, dim, spec, count, level)
        evals += used
        value = float(np.mean(means))
        err = float(np.std(means, ddof=1) / math.sqrt(len(means)))
        if err <= spec.target_abs_error or 2 * used > _MAX_LEVEL_EVALS:
            return QuadratureResult(value, err, evals)
        count *= 2
        level += 1


def integrate_box(f: Callable[[np.ndarray], np.ndarray], dim: int,
                  spec: QuadratureSpec) -> QuadratureResult:
    """Normalized average of ``f`` over [0, 2pi]^dim.

    ``f`` receives an (N, dim) array of points and must return N finite
    values; a non-finite value raises EvaluationFailureError carrying the
    offending node.
    """
    if dim < 1:
        raise DomainError("dimension must be >= 1")
    if spec.method == TENSOR:
        return _integrate_tensor(f, dim, spec)
    return _integrate_qmc(f, dim, spec)


def epsilon_of(points: np.ndarray) -> np.ndarray:
    """Dispersion eps(k) = 2 sum_j (1 - cos k_j), vectorized over rows."""
    return 2.0 * np.sum(1.0 - np.cos(points), axis=-1)


def epsilon_shifted_of(points: np.ndarray) -> np.ndarray:
    """eps(k + pi) = 2 sum_j (1 + cos k_j) = 4d - eps(k)."""
    return 2.0 * np.sum(1.0 + np.cos(points), axis=-1)


_WATSON_CACHE: dict[int, tuple[float, float]] = {}


def watson_w(d: int) -> QuadratureResult:
    """Watson integral W_d = int d^dk/(2pi)^d / eps(k), for d >= 3.

    Evaluated through W_d = int_0^inf exp(-2dt) I_0(2t)^d dt, written with
    the scaled Bessel function i0e so the integrand is exp-free:
    exp(-2dt) I_0(2t)^d = i0e(2t)^d.
    """
    if d <= 2:
        raise DivergenceError(f"W_d is infinite for d = {d} (requires d >= 3)")
    if d not in _WATSON_CACHE:
        val, err = _sciint.quad(lambda t: _special.i0e(2.0 * t) ** d, 0.0, np.inf, limit=200)
        _WATSON_CACHE[d] = (val, err)
    val, err = _WATSON_CACHE[d]
    return QuadratureResult(val, err, 0)


def integrate_inverse_epsilon(numerator: Callable[[np.ndarray], np.ndarray],
                              c_sum: float, d: int,
                              spec: QuadratureSpec) -> QuadratureResult:
    """Average of numerator(k)/eps(k) over [0, 2pi]^d.

    The numerator must tend to (c_sum)_+ at k -> 0 at rate O(|k|^2), which
    every positive-part cosine sum in this package does.  For c_sum = 0 the
    ratio is bounded and integrated directly; otherwise the singular mass
    is exactly (c_sum)_+ W_d plus a bounded remainder, which requires
    d >= 3.
    """
    if abs(c_sum) <= 1e-12:
        def ratio(pts):
            return numerator(pts) / np.maximum(epsilon_of(pts), 1e-300)
        return integrate_box(ratio, d, spec)
    if d <= 2:
        raise DivergenceError(
            f"integral of numerator/eps diverges: coefficient sum {c_sum:g} != 0 "
            f"and d = {d} <= 2"
        )
    w = watson_w(d)
    pos_sum = max(c_sum, 0.0)

    def remainder(pts):
        return (numerator(pts) - pos_sum) / np.maximum(epsilon_of(pts), 1e-300)

    rem = integrate_box(remainder, d, spec)
    return QuadratureResult(
        pos_sum * w.value + rem.value,
        pos_sum * w.abs_error_estimate + rem.abs_error_estimate,
        rem.evaluations,
    )


def watson_direct_check(d: int, nodes: int = 64) -> float:
    """Diagnostic estimate of W_d by direct midpoint quadrature of 1/eps.

    The cells touching k = 0 (cube of side 2pi/nodes) are excluded and the
    O(1/n) excluded-mass error is removed by Richardson extrapolation from
    the (nodes, 2*nodes) pair.  The Bessel representation in ``watson_w``
    remains the authoritative value; this cross-checks it.
    """
    if d <= 2:
        raise DivergenceError("direct Watson check requires d >= 3")

    def masked_mean(n):
        centers = 2.0 * np.pi * (np.arange(n) + 0.5) / n
        sums = 0.0
        kept = 0
        for pts in _midpoint_points(d, n, centers):
            dist = np.minimum(pts, 2.0 * np.pi - pts)
            keep = ~np.all(dist < 2.0 * np.pi / n, axis=1)
            sums += float(np.sum(1.0 / epsilon_of(pts[keep])))
            kept += int(np.sum(keep))
        return sums / n**d

    coarse = masked_mean(nodes)
    fine = masked_mean(2 * nodes)
    return 2.0 * fine - coarse


def _midpoint_points(dim, n, centers, chunk=_CHUNK):
    total = n**dim
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        pts = np.empty((idx.size, dim))
        rem = idx
        for j in range(dim):
            pts[:, dim - 1 - j] = centers[rem % n]
            rem = rem // n
        yield pts
