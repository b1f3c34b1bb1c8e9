"""Dispersion relation and the reflection-positivity integral families.

For a coefficient vector c = (c_0, ..., c_m) and dimension d the basic
objects are the lattice dispersion

    eps(k) = 2 sum_j (1 - cos k_j),        eps(k + pi) = 4d - eps(k),

the cosine sum S_c(k) = sum_l sum_j (c_l / d) cos(l k_j), and the integral
families over [0, 2pi]^d (all averages, the (2pi)^-d included):

    curly-I_c(alpha; u) = avg sqrt(u a + (1-u)(1-a) eps(k+pi)/eps(k)) (S_c)_+
    I_c(u)              = sup over alpha in [0,1] of curly-I
    J_c                 = curly-I at u = 0, alpha = 0
    tilde-I_c           = avg (S_c)_+ / eps(k)

plus the 2d-dimensional m -> infinity limits, where the vector gains a tail
coefficient c_inf attached to a second momentum ktilde:

    S(k, ktilde) = S_head(k) + (c_inf / d) sum_j cos(ktilde_j).

The supremum over alpha is resolved by shortcuts where available (u = 0;
even-support vectors with c_1 >= 0; the vector (1, -1) at u = 1/2) and by
endpoint-derivative tests plus golden-section search otherwise; curly-I is
concave in alpha, so the 1D search is reliable.

Limit integrals are evaluated directly in their 2d-dimensional form by
scrambled QMC.  Their 1/|k| (J-type) and 1/|k|^2 (tilde-I-type) corner
singularities are removed by subtracting the k -> 0 profile
psi(ktilde) = sum(head) + c_inf g(ktilde), whose contribution is exactly
(avg psi_+) * J_{(1,0)} resp. (avg psi_+) * W_d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import quadrature as quad
from .errors import DivergenceError, DomainError
from .quadrature import QMC, QuadratureResult, QuadratureSpec
from .search import golden_max

_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class CoefficientVector:
    """Finite head (c_0, ..., c_m), optionally extended by a tail c_inf.

    The tail is only meaningful for the limit integrals; ``sum()`` includes
    it when present.
    """

    head: tuple[float, ...]
    tail: Optional[float] = None

    def __post_init__(self):
        if len(self.head) == 0:
            raise DomainError("coefficient head must be nonempty")
        if not all(math.isfinite(x) for x in self.head):
            raise DomainError("coefficient head must be finite")
        if self.tail is not None and not math.isfinite(self.tail):
            raise DomainError("tail coefficient must be finite")

    @staticmethod
    def coerce(c: "CoefficientLike") -> "CoefficientVector":
        if isinstance(c, CoefficientVector):
            return c
        return CoefficientVector(tuple(float(x) for x in c))

    @property
    def has_tail(self) -> bool:
        return self.tail is not None

    def head_sum(self) -> float:
        return math.fsum(self.head)

    def sum(self) -> float:
        return self.head_sum() + (self.tail or 0.0)

    def even_support_with_c1_nonneg(self) -> bool:
        """True when c_1 >= 0 and c_l = 0 for every odd l >= 3.

        A tail coefficient counts as even support (it attaches to an even
        index in the limit construction), so it never blocks this route.
        """
        if len(self.head) >= 2 and self.head[1] < 0.0:
            return False
        return all(self.head[l] == 0.0 for l in range(3, len(self.head), 2))


CoefficientLike = Union[CoefficientVector, Sequence[float]]


@dataclass(frozen=True)
class ModelParams:
    """Loop-model parameters (d, theta, u, beta); beta may be math.inf."""

    d: int
    theta: int
    u: float
    beta: float

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("dimension d must be >= 1")
        if int(self.theta) != self.theta or self.theta < 1:
            raise DomainError("theta must be an integer >= 1")
        if not 0.0 <= self.u <= 0.5:
            raise DomainError("u must lie in [0, 1/2]")
        if not self.beta > 0:
            raise DomainError("beta must be positive")

    @property
    def beta_is_infinite(self) -> bool:
        return math.isinf(self.beta)


@dataclass(frozen=True)
class SupAlphaResult:
    value: float
    alpha: float
    abs_error_estimate: float
    evaluations: int
    route: str


def epsilon(k) -> np.ndarray | float:
    """eps(k) = 2 sum_j (1 - cos k_j); vectorized over the last axis."""
    out = 2.0 * np.sum(1.0 - np.cos(k), axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def epsilon_shifted(k) -> np.ndarray | float:
    """eps(k + pi) with (k + pi)_j = k_j + pi; equals 4d - eps(k)."""
    out = 2.0 * np.sum(1.0 + np.cos(k), axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def cosine_sum(c: CoefficientLike, k) -> np.ndarray | float:
    """S_c(k) = sum_l sum_j (c_l / d) cos(l k_j) for a head-only vector."""
    c = CoefficientVector.coerce(c)
    if c.has_tail:
        raise DomainError("cosine_sum takes a head-only coefficient vector")
    pts = np.atleast_2d(np.asarray(k, dtype=float))
    out = np.zeros(pts.shape[0])
    for l, cl in enumerate(c.head):
        if cl != 0.0:
            out += cl * np.mean(np.cos(l * pts), axis=1)
    return float(out[0]) if np.ndim(k) == 1 else out


def _positive_part_sum(c: CoefficientVector):
    def f(pts):
        return np.maximum(cosine_sum(c, pts), 0.0)
    return f


def ical(c: CoefficientLike, u: float, d: int, alpha: float,
         spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """curly-I_c(alpha; u, d): the alpha-interpolated square-root integral."""
    c = CoefficientVector.coerce(c)
    if c.has_tail:
        raise DomainError("coefficient vector has a tail; use the limit variant")
    if not 0.0 <= u <= 1.0:
        raise DomainError("u must lie in [0, 1]")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError("alpha must lie in [0, 1]")
    spec = spec or quad.default_spec(d)
    pos = _positive_part_sum(c)

    def f(pts):
        e = np.maximum(quad.epsilon_of(pts), 1e-300)
        ratio = quad.epsilon_shifted_of(pts) / e
        return np.sqrt(u * alpha + (1.0 - u) * (1.0 - alpha) * ratio) * pos(pts)

    return quad.integrate_box(f, d, spec)


def J(c: CoefficientLike, d: int,
      spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """J_c = avg sqrt(eps(k+pi)/eps(k)) (S_c)_+ (the u = 0, alpha = 0 case).

    For d = 1 with sum(c) > 0 the integrand has a non-integrable 1/|k|
    singularity; a doubling test flags the divergence instead of returning
    a drifting number.
    """
    c = CoefficientVector.coerce(c)
    if c.has_tail:
        raise DomainError("coefficient vector has a tail; use J_limit")
    spec = spec or quad.default_spec(d)
    pos = _positive_part_sum(c)

    def f(pts):
        e = np.maximum(quad.epsilon_of(pts), 1e-300)
        return np.sqrt(quad.epsilon_shifted_of(pts) / e) * pos(pts)

    if d == 1 and c.sum() > _ZERO_TOL:
        _doubling_divergence_check(f, d, spec)
    return quad.integrate_box(f, d, spec)


def _doubling_divergence_check(f, d, spec):
    """Raise when node doubling does not contract (log-divergent integrals)."""
    n = spec.nodes_per_axis
    v1 = quad._tensor_level_mean(f, d, n)
    v2 = quad._tensor_level_mean(f, d, 2 * n)
    v4 = quad._tensor_level_mean(f, d, 4 * n)
    d1, d2 = abs(v2 - v1), abs(v4 - v2)
    if d2 > 0.75 * d1 and d2 > 1e-12:
        raise DivergenceError(
            "J integral fails the doubling test (d = 1 with positive "
            f"coefficient sum): level gaps {d1:.3e} -> {d2:.3e} do not contract"
        )


def tilde_I(c: CoefficientLike, d: int,
            spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """tilde-I_c = avg (S_c)_+ / eps(k); finite iff sum(c) = 0 or d >= 3."""
    c = CoefficientVector.coerce(c)
    if c.has_tail:
        raise DomainError("coefficient vector has a tail; use tilde_I_limit")
    spec = spec or quad.default_spec(d)
    return quad.integrate_inverse_epsilon(_positive_part_sum(c), c.sum(), d, spec)


def sup_alpha_I(c: CoefficientLike, u: float, d: int,
                spec: Optional[QuadratureSpec] = None,
                force_search: bool = False) -> SupAlphaResult:
    """I_c(u, d) = sup over alpha in [0,1] of curly-I, with its maximizer.

    Resolution order: u = 0 pins alpha = 0; even-support vectors with
    c_1 >= 0 give sqrt(1-u) J_c at alpha = 0; (1, -1) at u = 1/2 gives
    1/sqrt(2) at alpha = 1; otherwise endpoint derivatives decide, falling
    back to golden-section search on the concave profile.
    ``force_search`` skips the shortcuts (used by consistency tests).
    """
    c = CoefficientVector.coerce(c)
    if c.has_tail:
        raise DomainError("coefficient vector has a tail; no limit supremum is defined")
    if not 0.0 <= u <= 0.5:
        raise DomainError("u must lie in [0, 1/2]")
    spec = spec or quad.default_spec(d)
    if not force_search:
        if u == 0.0:
            r = J(c, d, spec)
            return SupAlphaResult(r.value, 0.0, r.abs_error_estimate,
                                  r.evaluations, "alpha0-u0")
        if c.even_support_with_c1_nonneg():
            r = J(c, d, spec)
            s = math.sqrt(1.0 - u)
            return SupAlphaResult(s * r.value, 0.0, s * r.abs_error_estimate,
                                  r.evaluations, "alpha0-even-support")
        if c.head == (1.0, -1.0) and u == 0.5:
            return SupAlphaResult(1.0 / math.sqrt(2.0), 1.0, 0.0, 0, "closed-form")
    profile = _AlphaProfile.build(c, d, spec)
    value, alpha, err = profile.maximize(u)
    return SupAlphaResult(value, alpha, err, profile.evaluations, "search")


class _AlphaProfile:
    """curly-I(alpha) and its derivative on two shared tensor/QMC node sets."""

    def __init__(self, levels, evaluations):
        self._levels = levels  # list of (ratio, pos) array pairs, coarse->fine
        self.evaluations = evaluations

    @staticmethod
    def build(c: CoefficientVector, d: int, spec: QuadratureSpec) -> "_AlphaProfile":
        pos_f = _positive_part_sum(c)
        levels = []
        evals = 0
        if spec.method == QMC:
            m = max(6, math.ceil(math.log2(max(spec.sample_count // 16, 1))))
            children = np.random.SeedSequence(spec.seed).spawn(2)
            for i, mm in enumerate((m - 1, m)):
                pts = quad.sobol_points(d, mm, children[i])
                levels.append(_profile_arrays(pts, pos_f))
                evals += pts.shape[0]
        else:
            for n in (spec.nodes_per_axis, 2 * spec.nodes_per_axis):
                parts = [_profile_arrays(pts, pos_f) for pts in quad.tensor_points(d, n)]
                ratio = np.concatenate([p[0] for p in parts])
                pos = np.concatenate([p[1] for p in parts])
                levels.append((ratio, pos))
                evals += n**d
        return _AlphaProfile(levels, evals)

    def value(self, alpha: float, u: float, level: int = -1) -> float:
        ratio, pos = self._levels[level]
        fac = np.sqrt(u * alpha + (1.0 - u) * (1.0 - alpha) * ratio)
        return float(np.mean(fac * pos))

    def derivative(self, alpha: float, u: float, level: int = -1) -> float:
        ratio, pos = self._levels[level]
        den = 2.0 * np.sqrt(np.maximum(u * alpha + (1.0 - u) * (1.0 - alpha) * ratio,
                                       1e-300))
        return float(np.mean((u - (1.0 - u) * ratio) / den * pos))

    def _pair_err(self, alpha: float, u: float) -> float:
        return abs(self.value(alpha, u, -1) - self.value(alpha, u, 0))

    def maximize(self, u: float, alpha_tol: float = 1e-4):
        """Endpoint-derivative shortcut, then golden section (concave profile)."""
        d0 = self.derivative(0.0, u)
        d0_err = abs(d0 - self.derivative(0.0, u, level=0))
        if d0 <= -3.0 * d0_err - _ZERO_TOL:
            return self.value(0.0, u), 0.0, self._pair_err(0.0, u)
        d1 = self.derivative(1.0, u)
        d1_err = abs(d1 - self.derivative(1.0, u, level=0))
        if d1 >= 3.0 * d1_err + _ZERO_TOL:
            return self.value(1.0, u), 1.0, self._pair_err(1.0, u)
        alpha, val = golden_max(lambda a: self.value(a, u), 0.0, 1.0, tol=alpha_tol)
        for a_end in (0.0, 1.0):
            v_end = self.value(a_end, u)
            if v_end > val:
                alpha, val = a_end, v_end
        return val, alpha, self._pair_err(alpha, u)


def _profile_arrays(pts, pos_f):
    e = np.maximum(quad.epsilon_of(pts), 1e-300)
    return quad.epsilon_shifted_of(pts) / e, pos_f(pts)


# ---------------------------------------------------------------------------
# Limit integrals (m -> infinity), 2d-dimensional.
# ---------------------------------------------------------------------------

def _require_limit_vector(c: CoefficientVector):
    if not c.has_tail:
        raise DomainError("limit integrals need a coefficient vector with a tail")


def _limit_replicates(c: CoefficientVector, d: int, spec: QuadratureSpec):
    """Per-scrambling arrays (sqrt-ratio, 1/eps, S(k,kt), psi(kt)) for 2d QMC."""
    count = spec.sample_count if spec.method == QMC else 1 << 20
    m = max(6, math.ceil(math.log2(max(count // 16, 1))))
    reps = []
    for child in np.random.SeedSequence(spec.seed).spawn(16):
        pts = quad.sobol_points(2 * d, m, child)
        k, kt = pts[:, :d], pts[:, d:]
        e = np.maximum(quad.epsilon_of(k), 1e-300)
        sq = np.sqrt(quad.epsilon_shifted_of(k) / e)
        g_kt = np.mean(np.cos(kt), axis=1)
        psi = c.head_sum() + c.tail * g_kt
        full = cosine_sum(CoefficientVector(c.head), k) + c.tail * g_kt
        reps.append((sq, 1.0 / e, full, psi))
    return reps, 16 * (1 << m)


def _limit_combine(parts):
    arr = np.asarray(parts)
    return float(np.mean(arr)), float(np.std(arr, ddof=1) / math.sqrt(len(arr)))


def J_limit(c: CoefficientLike, d: int,
            spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """2d-dimensional limit of J along c(N) = (head, 0, ..., 0, c_inf).

    Requires sum(head) + c_inf = 0, the condition that keeps the limit
    integrand free of a k = 0 blow-up in the numerator.  The remaining
    sqrt(eps(k+pi)/eps(k)) factor contributes (avg psi_+) * J_{(1,0)},
    which diverges for d = 1 when sum(head) > 0.
    """
    c = CoefficientVector.coerce(c)
    _require_limit_vector(c)
    if abs(c.sum()) > 1e-9:
        raise DomainError(
            f"limit J needs sum(head) + tail = 0, got {c.sum():g}"
        )
    spec = spec or quad.default_spec(d)
    reps, evals = _limit_replicates(c, d, spec)
    amp = float(np.mean([np.mean(np.maximum(psi, 0.0)) for _, _, _, psi in reps]))
    vals = [float(np.mean(sq * (np.maximum(full, 0.0) - np.maximum(psi, 0.0))))
            for sq, _, full, psi in reps]
    bounded, err = _limit_combine(vals)
    if amp <= _ZERO_TOL:
        return QuadratureResult(bounded, err, evals)
    j10 = J((1.0, 0.0), d, quad.default_spec(d, seed=spec.seed))
    return QuadratureResult(bounded + amp * j10.value,
                            err + amp * j10.abs_error_estimate,
                            evals + j10.evaluations)


def tilde_I_limit(c: CoefficientLike, d: int,
                  spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
    """2d-dimensional limit of tilde-I; singular part is (avg psi_+) * W_d.

    The k = 0 profile psi(ktilde) = sum(head) + c_inf g(ktilde) does not
    integrate to zero against the positive part unless it is nonpositive,
    so a nonzero head sum forces d >= 3; otherwise the integral diverges.
    """
    c = CoefficientVector.coerce(c)
    _require_limit_vector(c)
    spec = spec or quad.default_spec(d)
    reps, evals = _limit_replicates(c, d, spec)
    amp = float(np.mean([np.mean(np.maximum(psi, 0.0)) for _, _, _, psi in reps]))
    if amp > 1e-9 and d <= 2:
        raise DivergenceError(
            f"limit tilde-I diverges: singular coefficient {amp:g} > 0 and d = {d} <= 2"
        )
    vals = [float(np.mean(inv_e * (np.maximum(full, 0.0) - np.maximum(psi, 0.0))))
            for _, inv_e, full, psi in reps]
    bounded, err = _limit_combine(vals)
    if amp <= _ZERO_TOL:
        return QuadratureResult(bounded, err, evals)
    w = quad.watson_w(d)
    return QuadratureResult(bounded + amp * w.value,
                            err + amp * w.abs_error_estimate, evals)


# ---------------------------------------------------------------------------
# Shared-node families c(eta) = base + eta * step, used by the bounds layer.
# ---------------------------------------------------------------------------

class EtaFamily:
    """Evaluates J / tilde-I / sup-alpha for vectors affine in a parameter.

    The quadrature nodes (two tensor levels, or 16 QMC scramblings for
    limit families) are generated once; each eta evaluation is then a few
    vector operations, which makes the eta-optimizations in the bounds
    layer cheap.  Results agree with the standalone operations; tests pin
    that down.
    """

    def __init__(self, d: int, base: Sequence[float], step: Sequence[float],
                 tail: Optional[float] = None,
                 spec: Optional[QuadratureSpec] = None):
        width = max(len(base), len(step))
        self.base = tuple(float(x) for x in base) + (0.0,) * (width - len(base))
        self.step = tuple(float(x) for x in step) + (0.0,) * (width - len(step))
        self.tail = tail
        self.d = d
        self.spec = spec or quad.default_spec(2 * d if tail is not None else d)
        self._s0 = math.fsum(self.base)
        self._s1 = math.fsum(self.step)
        self.evaluations = 0
        self._j10: Optional[QuadratureResult] = None
        if tail is None:
            self._build_tensor()
        else:
            self._build_limit()

    def coefficients(self, eta: float) -> CoefficientVector:
        head = tuple(b + eta * s for b, s in zip(self.base, self.step))
        return CoefficientVector(head, self.tail)

    # -- construction -------------------------------------------------------

    def _build_tensor(self):
        cb = CoefficientVector(self.base)
        cs = CoefficientVector(self.step)
        self._levels = []
        if self.spec.method == QMC:
            m = max(6, math.ceil(math.log2(max(self.spec.sample_count // 16, 1))))
            children = np.random.SeedSequence(self.spec.seed).spawn(2)
            for i, mm in enumerate((m - 1, m)):
                pts = quad.sobol_points(self.d, mm, children[i])
                self._levels.append(self._family_arrays(pts, cb, cs))
                self.evaluations += pts.shape[0]
        else:
            for n in (self.spec.nodes_per_axis, 2 * self.spec.nodes_per_axis):
                parts = [self._family_arrays(p, cb, cs)
                         for p in quad.tensor_points(self.d, n)]
                self._levels.append(tuple(np.concatenate([p[i] for p in parts])
                                          for i in range(3)))
                self.evaluations += n**self.d

    @staticmethod
    def _family_arrays(pts, cb, cs):
        e = np.maximum(quad.epsilon_of(pts), 1e-300)
        ratio = quad.epsilon_shifted_of(pts) / e
        return ratio, np.asarray(cosine_sum(cb, pts)), np.asarray(cosine_sum(cs, pts))

    def _build_limit(self):
        c = CoefficientVector(self.base, self.tail)
        self._reps = []
        count = self.spec.sample_count if self.spec.method == QMC else 1 << 20
        m = max(6, math.ceil(math.log2(max(count // 16, 1))))
        cs = CoefficientVector(self.step)
        for child in np.random.SeedSequence(self.spec.seed).spawn(16):
            pts = quad.sobol_points(2 * self.d, m, child)
            k, kt = pts[:, :self.d], pts[:, self.d:]
            e = np.maximum(quad.epsilon_of(k), 1e-300)
            sq = np.sqrt(quad.epsilon_shifted_of(k) / e)
            g_kt = np.mean(np.cos(kt), axis=1)
            a = np.asarray(cosine_sum(CoefficientVector(self.base), k)) + self.tail * g_kt
            b = np.asarray(cosine_sum(cs, k))
            self._reps.append((sq, 1.0 / e, a, b, g_kt))
            self.evaluations += pts.shape[0]

    # -- evaluation ---------------------------------------------------------

    def J(self, eta: float) -> QuadratureResult:
        if self.tail is None:
            vals = [float(np.mean(np.sqrt(r) * np.maximum(a + eta * b, 0.0)))
                    for r, a, b in self._levels]
            return QuadratureResult(vals[-1], abs(vals[-1] - vals[0]), self.evaluations)
        return self._limit_J(eta)

    def _psi(self, eta: float, g_kt):
        return self._s0 + eta * self._s1 + self.tail * g_kt

    def _limit_J(self, eta: float) -> QuadratureResult:
        amps, vals = [], []
        for sq, _, a, b, g_kt in self._reps:
            psi_pos = np.maximum(self._psi(eta, g_kt), 0.0)
            amps.append(float(np.mean(psi_pos)))
            vals.append(float(np.mean(sq * (np.maximum(a + eta * b, 0.0) - psi_pos))))
        bounded, err = _limit_combine(vals)
        amp = float(np.mean(amps))
        if amp <= _ZERO_TOL:
            return QuadratureResult(bounded, err, self.evaluations)
        if self._j10 is None:
            self._j10 = J((1.0, 0.0), self.d,
                          quad.default_spec(self.d, seed=self.spec.seed))
        return QuadratureResult(bounded + amp * self._j10.value,
                                err + amp * self._j10.abs_error_estimate,
                                self.evaluations)

    def tilde_I(self, eta: float) -> QuadratureResult:
        if self.tail is not None:
            return self._limit_tilde_I(eta)
        c_sum = self._s0 + eta * self._s1
        if abs(c_sum) <= _ZERO_TOL:
            vals = []
            for i, (_, a, b) in enumerate(self._levels):
                e = self._eps_level(i)
                vals.append(float(np.mean(np.maximum(a + eta * b, 0.0) / e)))
            return QuadratureResult(vals[-1], abs(vals[-1] - vals[0]), self.evaluations)
        if self.d <= 2:
            raise DivergenceError(
                f"tilde-I diverges: coefficient sum {c_sum:g} != 0 and d = {self.d} <= 2"
            )
        pos_sum = max(c_sum, 0.0)
        w = quad.watson_w(self.d)
        vals = []
        for i, (r, a, b) in enumerate(self._levels):
            e = self._eps_level(i)
            vals.append(float(np.mean((np.maximum(a + eta * b, 0.0) - pos_sum) / e)))
        return QuadratureResult(pos_sum * w.value + vals[-1],
                                abs(vals[-1] - vals[0]) + pos_sum * w.abs_error_estimate,
                                self.evaluations)

    def _eps_level(self, i):
        # eps recovered from the stored ratio: eps = 4d / (1 + ratio)
        r = self._levels[i][0]
        return 4.0 * self.d / (1.0 + r)

    def _limit_tilde_I(self, eta: float) -> QuadratureResult:
        amps, vals = [], []
        for _, inv_e, a, b, g_kt in self._reps:
            psi_pos = np.maximum(self._psi(eta, g_kt), 0.0)
            amps.append(float(np.mean(psi_pos)))
            vals.append(float(np.mean(inv_e * (np.maximum(a + eta * b, 0.0) - psi_pos))))
        bounded, err = _limit_combine(vals)
        amp = float(np.mean(amps))
        if amp <= _ZERO_TOL:
            return QuadratureResult(bounded, err, self.evaluations)
        if self.d <= 2:
            raise DivergenceError(
                f"limit tilde-I diverges: singular coefficient {amp:g} > 0 "
                f"and d = {self.d} <= 2"
            )
        w = quad.watson_w(self.d)
        return QuadratureResult(bounded + amp * w.value,
                                err + amp * w.abs_error_estimate, self.evaluations)

    def sup_alpha_I(self, eta: float, u: float,
                    alpha_tol: float = 1e-4) -> SupAlphaResult:
        if self.tail is not None:
            raise DomainError("no alpha supremum is defined for limit families")
        c = self.coefficients(eta)
        if u == 0.0:
            r = self.J(eta)
            return SupAlphaResult(r.value, 0.0, r.abs_error_estimate,
                                  self.evaluations, "alpha0-u0")
        if c.even_support_with_c1_nonneg():
            r = self.J(eta)
            s = math.sqrt(1.0 - u)
            return SupAlphaResult(s * r.value, 0.0, s * r.abs_error_estimate,
                                  self.evaluations, "alpha0-even-support")
        profile = _AlphaProfile(
            [(r, np.maximum(a + eta * b, 0.0)) for r, a, b in self._levels],
            self.evaluations)
        value, alpha, err = profile.maximize(u, alpha_tol)
        return SupAlphaResult(value, alpha, err, self.evaluations, "search")
