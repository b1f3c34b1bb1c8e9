"""Lower bounds and thresholds assembled from the integral families.

Everything here evaluates one of the closed consequences of the main
correlation inequality:

* ``nn_lower_bound``: the nearest-neighbor connection bound
  P = (sqrt(zeta^2 + 1 - theta/(4 d beta)) - zeta)^2 with
  zeta = (theta / 2 sqrt 2) I_{(1,-1)}; at u = 1/2 this collapses to the
  closed form zeta = theta/4.

* ``finite_range_bound`` / ``long_range_bound``: distance-m connection
  bounds sup over eta >= 0 of
  1 - eta h_P((theta / 2 sqrt 2 eta) I_{c(eta)}) - (theta / 2 beta) tilde-I,
  with c(eta) = (1 - eta, eta, 0, ..., 0, -1); the long-range version
  replaces the integrals by their m -> infinity limits, where the
  sqrt(1-u) factor of the even-support shortcut is absorbed into
  gamma = theta sqrt(1-u).

* ``gamma_threshold``: the largest gamma for which the loop-density
  functional b(gamma) stays positive, in both the two-point variant
  (eta restricted to {0, 1}) and the full variant (eta in [0, 1], p
  restricted to [P, 1]).

* ``beta_crit_upper``: the least beta threshold certified by the density
  bound, inf over feasible eta of
  (theta/2) tilde-I_{(1-eta,eta)} / (1 - eta h_0(...)).

Probability-type bounds are clamped to [0, 1]; a vacuous negative bound
is reported as 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import quadrature as quad
from . import rp_integrals as rp
from .errors import DivergenceError, DomainError, InfeasibleError
from .quadrature import QuadratureResult, QuadratureSpec
from .rp_integrals import CoefficientVector, EtaFamily, ModelParams
from .search import bisect_threshold, golden_max, grid_then_golden_max, grid_then_golden_min

_SQRT2 = math.sqrt(2.0)
# Search domain for the eta-supremum: the bound drops linearly to -infinity
# as eta grows, and tends to the eta-free constant as eta -> 0, so a
# truncated log grid plus golden refinement is safe.
_ETA_GRID = np.geomspace(1e-6, 32.0, 65)
_GAMMA_TOL = 5e-3


@dataclass(frozen=True)
class BoundResult:
    value: float
    error_estimate: float
    argmax_eta: Optional[float] = None
    components: dict = field(default_factory=dict)


def h(p: float, x) -> float | np.ndarray:
    """Piecewise envelope of the inner minimization over the edge probability.

    h_p(x) = 1 - p + 2 x sqrt(p) for x <= sqrt(p); 1 + x^2 for
    sqrt(p) < x <= 1; 2x beyond.  Continuous and nondecreasing on [0, inf).
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError("h requires p in [0, 1]")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        raise DomainError("h requires x >= 0")
    sp = math.sqrt(p)
    out = np.where(xs <= sp, 1.0 - p + 2.0 * xs * sp,
                   np.where(xs <= 1.0, 1.0 + xs * xs, 2.0 * xs))
    return float(out) if np.ndim(x) == 0 else out


def _require_bound_params(p: ModelParams):
    if p.theta < 2:
        raise DomainError("bounds require theta >= 2")


def _zeta_and_I(p: ModelParams, spec: Optional[QuadratureSpec]):
    """zeta = (theta / 2 sqrt 2) I_{(1,-1)} with the u = 1/2 closed form."""
    if p.u == 0.5:
        res = rp.SupAlphaResult(1.0 / _SQRT2, 1.0, 0.0, 0, "closed-form")
    else:
        res = rp.sup_alpha_I((1.0, -1.0), p.u, p.d, spec)
    return p.theta / (2.0 * _SQRT2) * res.value, res


def nn_lower_bound(p: ModelParams, spec: Optional[QuadratureSpec] = None) -> BoundResult:
    """Nearest-neighbor connection lower bound P_{beta,theta,u,d}.

    Defined for beta >= theta/(4d); the finite-beta correction enters as
    -theta/(4 d beta) under the square root and vanishes at beta = inf.
    """
    _require_bound_params(p)
    t = 0.0 if p.beta_is_infinite else p.theta / (4.0 * p.d * p.beta)
    if t > 1.0 + 1e-15:
        raise DomainError(
            f"nn_lower_bound needs beta >= theta/(4d) = {p.theta / (4.0 * p.d):g}, "
            f"got beta = {p.beta:g}"
        )
    zeta, ires = _zeta_and_I(p, spec)
    radicand = max(zeta * zeta + 1.0 - t, 0.0)
    root = math.sqrt(radicand)
    value = (root - zeta) ** 2
    err = 0.0
    if root > 0.0:
        err = 2.0 * value / root * (p.theta / (2.0 * _SQRT2)) * ires.abs_error_estimate
    return BoundResult(
        value=min(max(value, 0.0), 1.0),
        error_estimate=err,
        components={"zeta": zeta, "I_(1,-1)": ires.value, "alpha": ires.alpha,
                    "route": ires.route, "beta_term": t},
    )


def _c_eta_vectors(m: int):
    """base/step of c(eta) = (1 - eta, eta, 0, ..., 0, -1) of length m + 1."""
    base = [1.0] + [0.0] * (m - 1) + [-1.0]
    step = [-1.0, 1.0] + [0.0] * (m - 1)
    return base, step


def _sup_over_eta(value_fn, eta_grid=_ETA_GRID, tol: float = 1e-4):
    eta, val = grid_then_golden_max(value_fn, eta_grid, tol=tol)
    return eta, val


def finite_range_bound(m: int, p: ModelParams,
                       spec: Optional[QuadratureSpec] = None) -> BoundResult:
    """Connection bound at lattice distance m >= 2 (clamped at zero)."""
    if m < 2:
        raise DomainError("finite_range_bound requires m >= 2")
    _require_bound_params(p)
    nn = nn_lower_bound(p, spec)
    base, step = _c_eta_vectors(m)
    family = EtaFamily(p.d, base, step, spec=spec)
    pref = p.theta / (2.0 * _SQRT2)
    cache: dict[float, tuple] = {}

    def parts(eta: float):
        if eta not in cache:
            ires = family.sup_alpha_I(eta, p.u)
            beta_term = 0.0
            beta_err = 0.0
            if not p.beta_is_infinite:
                it = family.tilde_I(eta)
                beta_term = p.theta / (2.0 * p.beta) * it.value
                beta_err = p.theta / (2.0 * p.beta) * it.abs_error_estimate
            cache[eta] = (ires, beta_term, beta_err)
        return cache[eta]

    def value_fn(eta: float) -> float:
        ires, beta_term, _ = parts(eta)
        return 1.0 - eta * h(nn.value, pref / eta * ires.value) - beta_term

    eta_star, raw = _sup_over_eta(value_fn)
    ires, _, beta_err = parts(eta_star)
    err = (p.theta / _SQRT2) * ires.abs_error_estimate + 2.0 * eta_star * nn.error_estimate + beta_err
    return BoundResult(
        value=min(max(raw, 0.0), 1.0),
        error_estimate=err,
        argmax_eta=eta_star,
        components={"raw": raw, "P": nn.value, "I(eta*)": ires.value,
                    "alpha(eta*)": ires.alpha, "route": ires.route, "m": m},
    )


def long_range_bound(p: ModelParams,
                     spec: Optional[QuadratureSpec] = None) -> BoundResult:
    """Limit of the finite-range bound along even m -> infinity.

    The tilde-I limit integral diverges for d <= 2 (its k = 0 profile has
    unit mass): at finite beta that surfaces as a DivergenceError, while at
    beta = inf every finite-beta bound is -infinity and the reported limit
    bound is the clamped 0.
    """
    _require_bound_params(p)
    if p.d <= 2:
        if not p.beta_is_infinite:
            raise DivergenceError(
                "long-range bound diverges at finite beta: the limit tilde-I "
                f"integral is infinite for d = {p.d} <= 2"
            )
        return BoundResult(value=0.0, error_estimate=0.0,
                           components={"raw": -math.inf,
                                       "note": "vacuous: limit tilde-I diverges for d <= 2"})
    nn = nn_lower_bound(p, spec)
    family = EtaFamily(p.d, [1.0, 0.0], [-1.0, 1.0], tail=-1.0, spec=spec)
    gamma = p.theta * math.sqrt(1.0 - p.u)
    pref = gamma / (2.0 * _SQRT2)
    cache: dict[float, tuple] = {}

    def parts(eta: float):
        if eta not in cache:
            jres = family.J(eta)
            beta_term = 0.0
            beta_err = 0.0
            if not p.beta_is_infinite:
                it = family.tilde_I(eta)
                beta_term = p.theta / (2.0 * p.beta) * it.value
                beta_err = p.theta / (2.0 * p.beta) * it.abs_error_estimate
            cache[eta] = (jres, beta_term, beta_err)
        return cache[eta]

    def value_fn(eta: float) -> float:
        jres, beta_term, _ = parts(eta)
        return 1.0 - eta * h(nn.value, pref / eta * jres.value) - beta_term

    eta_star, raw = _sup_over_eta(value_fn)
    jres, _, beta_err = parts(eta_star)
    err = (gamma / _SQRT2) * jres.abs_error_estimate + 2.0 * eta_star * nn.error_estimate + beta_err
    return BoundResult(
        value=min(max(raw, 0.0), 1.0),
        error_estimate=err,
        argmax_eta=eta_star,
        components={"raw": raw, "P": nn.value, "J_limit(eta*)": jres.value},
    )


def b_gamma(eta: float, p_val: float, gamma: float, d: int,
            spec: Optional[QuadratureSpec] = None) -> float:
    """Density functional b_gamma(eta, p) = 1 - eta + p eta - gamma sqrt(p/2) J_{(1-eta,eta)}."""
    if eta < 0:
        raise DomainError("eta must be >= 0")
    if not 0.0 <= p_val <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    jres = rp.J((1.0 - eta, eta), d, spec)
    return 1.0 - eta + p_val * eta - gamma * math.sqrt(p_val / 2.0) * jres.value


class GammaSolver:
    """Threshold solver for the loop-density functionals at one dimension.

    Shares a single J_{(1-eta,eta)} family (and the J_{(1,-1)} value that
    fixes the p-interval endpoint) across all gamma evaluations, so the
    bisection and the 50-point monotonicity scans stay cheap.
    """

    def __init__(self, d: int, spec: Optional[QuadratureSpec] = None,
                 eta_points: int = 201, p_points: int = 201):
        if d < 3:
            raise DomainError("gamma thresholds require d >= 3 "
                              "(the J_{(1,0)} path diverges below)")
        self.d = d
        self.family = EtaFamily(d, [1.0, 0.0], [-1.0, 1.0], spec=spec)
        self.etas = np.linspace(0.0, 1.0, eta_points)
        self._jgrid = np.array([self.family.J(e).value for e in self.etas])
        self.j10 = self._jgrid[0]
        self.j01 = self._jgrid[-1]
        self.j1m1 = rp.J((1.0, -1.0), d, spec).value
        self.p_points = p_points

    def p_lower(self, gamma: float) -> float:
        """Endpoint of the p-interval, with gamma as the primitive parameter."""
        zeta = gamma / (2.0 * _SQRT2) * self.j1m1
        return (math.sqrt(zeta * zeta + 1.0) - zeta) ** 2

    def _sup_eta(self, p: float, gamma: float) -> float:
        vals = 1.0 - self.etas + p * self.etas - gamma * math.sqrt(p / 2.0) * self._jgrid
        i = int(np.argmax(vals))
        lo = self.etas[max(i - 1, 0)]
        hi = self.etas[min(i + 1, len(self.etas) - 1)]

        def f(eta):
            return (1.0 - eta + p * eta
                    - gamma * math.sqrt(p / 2.0) * self.family.J(eta).value)

        _, v = golden_max(f, lo, hi, tol=_GAMMA_TOL / 10.0)
        return max(v, float(vals[i]))

    def b_new(self, gamma: float) -> float:
        """inf over p in [P, 1] of sup over eta in [0, 1] of b_gamma."""
        ps = np.linspace(self.p_lower(gamma), 1.0, self.p_points)
        grid_vals = [self._sup_eta(p, gamma) for p in ps]
        i = int(np.argmin(grid_vals))
        lo = ps[max(i - 1, 0)]
        hi = ps[min(i + 1, len(ps) - 1)]
        if hi <= lo:
            return grid_vals[i]
        from .search import golden_min
        _, v = golden_min(lambda p: self._sup_eta(p, gamma), lo, hi,
                          tol=_GAMMA_TOL / 10.0)
        return min(v, grid_vals[i])

    def b_ueltschi(self, gamma: float) -> float:
        """inf over p in [0, 1] of max(b_gamma at eta = 0, at eta = 1)."""
        def f(p):
            s = gamma * math.sqrt(p / 2.0)
            return max(1.0 - s * self.j10, p - s * self.j01)

        ps = np.linspace(0.0, 1.0, self.p_points)
        _, v = grid_then_golden_min(f, ps, tol=_GAMMA_TOL / 10.0)
        return v

    def threshold(self, method: str) -> float:
        fn = {"ueltschi": self.b_ueltschi, "new": self.b_new}.get(method)
        if fn is None:
            raise DomainError(f"unknown gamma threshold method {method!r}")
        if fn(0.5) <= 0:
            raise DomainError("b(gamma) is already nonpositive at gamma = 0.5")
        hi = 1.0
        while fn(hi) > 0 and hi < 64:
            hi *= 2.0
        return bisect_threshold(lambda g: fn(g) > 0, hi / 2.0, hi, _GAMMA_TOL)

    def ueltschi_closed_form(self) -> float:
        """sqrt(2 / (J_{(1,0)} J_{(0,1)})), the analytic two-point threshold."""
        return math.sqrt(2.0 / (self.j10 * self.j01))


def gamma_threshold(method: str, d: int,
                    spec: Optional[QuadratureSpec] = None) -> float:
    """Largest gamma = theta sqrt(1-u) with a positive density functional."""
    return GammaSolver(d, spec).threshold(method)


def beta_crit_upper(p: ModelParams, spec: Optional[QuadratureSpec] = None,
                    return_eta: bool = False):
    """Least certified beta threshold for a positive loop density.

    Long-range order is guaranteed for every beta above
    (theta/2) tilde-I_{(1-eta,eta)} / (1 - eta h_0(...)) at any feasible
    eta, so the threshold is the infimum of that ratio over the feasible
    set (where the denominator is positive).  The ratio blows up at the
    feasibility boundary; the infimum is interior.
    """
    _require_bound_params(p)
    if p.d < 3:
        raise DomainError("beta_crit_upper requires d >= 3 "
                          "(tilde-I with coefficient sum 1 diverges below)")
    family = EtaFamily(p.d, [1.0, 0.0], [-1.0, 1.0], spec=spec)
    gamma = p.theta * math.sqrt(1.0 - p.u)
    pref = gamma / (2.0 * _SQRT2)

    def ratio(eta: float) -> float:
        den = 1.0 - eta * h(0.0, pref / eta * family.J(eta).value)
        if den <= 1e-12:
            return math.inf
        return (p.theta / 2.0) * family.tilde_I(eta).value / den

    grid = np.geomspace(1e-6, 1.0, 65)
    vals = [ratio(e) for e in grid]
    if not any(math.isfinite(v) for v in vals):
        raise InfeasibleError(
            "empty feasible set: the density denominator is nonpositive "
            "for every eta in (0, 1]"
        )
    i = min(range(len(grid)), key=lambda j: vals[j])
    from .search import golden_min
    eta_star, value = golden_min(ratio, grid[max(i - 1, 0)],
                                 grid[min(i + 1, len(grid) - 1)], tol=1e-5)
    if vals[i] < value:
        eta_star, value = grid[i], vals[i]
    if return_eta:
        return value, eta_star
    return value


def theorem1_rhs(c: rp.CoefficientLike, p: ModelParams, p_edge: float,
                 kappa: Sequence[float],
                 spec: Optional[QuadratureSpec] = None) -> float:
    """Right-hand side of the main inequality with supplied connection values.

    Computes sum_l c_l kappa_l - theta sqrt(p_edge / 2) I_c
    - (theta / 2 beta) tilde-I_c, where kappa_l plays the role of the
    connection probability at lattice distance l (from a simulation or a
    hypothesis).  Useful for Monte-Carlo-versus-bound experiments.
    """
    c = CoefficientVector.coerce(c)
    if not 0.0 <= p_edge <= 1.0:
        raise DomainError("p_edge must lie in [0, 1]")
    if len(kappa) != len(c.head):
        raise DomainError(
            f"kappa placeholders have length {len(kappa)}, expected {len(c.head)}"
        )
    ires = rp.sup_alpha_I(c, p.u, p.d, spec)
    total = math.fsum(cl * k for cl, k in zip(c.head, kappa))
    total -= p.theta * math.sqrt(p_edge / 2.0) * ires.value
    if not p.beta_is_infinite:
        it = rp.tilde_I(c, p.d, spec)
        total -= p.theta / (2.0 * p.beta) * it.value
    return total
