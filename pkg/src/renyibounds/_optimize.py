"""1-D optimization helpers shared by the bound and exponent modules."""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.optimize import brentq, minimize_scalar


def minimize_on_interval(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grid: int = 201,
    xtol: float = 1e-10,
) -> tuple[float, float]:
    """Minimize ``f`` on ``[lo, hi]``: coarse grid scan, then bounded Brent refinement.

    ``f`` must be finite on the closed interval (callers supply continuous
    extensions at the endpoints).  Returns ``(argmin, min)``.
    """
    xs = np.linspace(lo, hi, grid)
    fs = np.array([f(x) for x in xs])
    k = int(np.argmin(fs))
    best_x, best_f = float(xs[k]), float(fs[k])
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, grid - 1)]
    if b > a:
        res = minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": xtol})
        if res.fun < best_f:
            best_x, best_f = float(res.x), float(res.fun)
    return best_x, best_f


def maximize_on_interval(f, lo, hi, grid=201, xtol=1e-10) -> tuple[float, float]:
    x, v = minimize_on_interval(lambda t: -f(t), lo, hi, grid=grid, xtol=xtol)
    return x, -v


def golden_section(f, lo: float, hi: float, tol: float = 1e-9, max_iter: int = 200):
    """Plain golden-section minimization of a unimodal ``f`` on ``[lo, hi]``."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def solve_increasing(f, lo: float, hi: float, target: float, xtol: float = 1e-13) -> float:
    """Root of ``f(x) = target`` for ``f`` nondecreasing on ``[lo, hi]`` (clamped at the ends)."""
    flo, fhi = f(lo) - target, f(hi) - target
    if flo >= 0:
        return lo
    if fhi <= 0:
        return hi
    return float(brentq(lambda x: f(x) - target, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200))
