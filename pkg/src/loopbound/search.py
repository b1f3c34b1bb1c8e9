"""1D search helpers: golden-section extremization and grid-then-refine."""

from __future__ import annotations

import math
from typing import Callable, Sequence

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-4) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on [lo, hi]; returns (argmax, value).

    Tolerance is on the argument.  Exactly the classic two-point scheme,
    reusing one evaluation per step.
    """
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def golden_min(f: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-4) -> tuple[float, float]:
    x, v = golden_max(lambda t: -f(t), lo, hi, tol)
    return x, -v


def grid_then_golden_max(f: Callable[[float], float], grid: Sequence[float],
                         tol: float = 1e-4) -> tuple[float, float]:
    """Evaluate on a grid, then golden-refine inside the best bracket."""
    vals = [f(x) for x in grid]
    i = max(range(len(grid)), key=vals.__getitem__)
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    if hi <= lo:
        return grid[i], vals[i]
    x, v = golden_max(f, lo, hi, tol)
    if vals[i] > v:
        return grid[i], vals[i]
    return x, v


def grid_then_golden_min(f: Callable[[float], float], grid: Sequence[float],
                         tol: float = 1e-4) -> tuple[float, float]:
    x, v = grid_then_golden_max(lambda t: -f(t), grid, tol)
    return x, -v


def bisect_threshold(indicator: Callable[[float], bool], lo: float, hi: float,
                     tol: float) -> float:
    """Largest x in [lo, hi] with indicator true, assuming true-then-false."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if indicator(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
