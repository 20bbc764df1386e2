"""Channel-coding exponents and the rate thresholds built on Gallager's E_0.

Rates are in nats per channel use unless a name says ``bits``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from ._optimize import maximize_on_interval, solve_increasing
from .distributions import Channel, DomainError, ProbVector
from .measures import LOG2, binary_divergence, binary_entropy, gallager_E0, mutual_information

RHO_CAP = 1e3


def random_coding_exponent(R: float, prior, channel: Channel) -> tuple[float, float]:
    """``E_r(R, P_X) = max_{rho in [0,1]} E_0(rho) - rho R`` and the maximizing rho."""
    return list_exponent(R, 1, prior, channel, with_arg=True)


def list_exponent(R: float, L: int, prior, channel: Channel, with_arg: bool = False):
    """``E_L(R, P_X) = max_{rho in [0, L]} E_0(rho) - rho R``."""
    if R < 0:
        raise ValueError("rate must be nonnegative")
    if L < 1:
        raise ValueError("list size must be at least 1")
    rho, val = maximize_on_interval(
        lambda r: gallager_E0(r, prior, channel) - r * R, 0.0, float(L), grid=11 * L, xtol=1e-11
    )
    val = max(val, 0.0)
    return (val, rho) if with_arg else val


def _is_bsc(channel: Channel, tol=1e-12) -> bool:
    W = channel.transition
    return W.shape == (2, 2) and abs(W[0, 0] - W[1, 1]) <= tol and abs(W[0, 1] - W[1, 0]) <= tol


def _best_E0(rho: float, channel: Channel, step: float = 1e-3) -> float:
    """``max_Q E_0(rho, Q)``: uniform input for symmetric binary channels, a grid plus refinement otherwise."""
    if channel.is_binary_symmetric_output():
        return gallager_E0(rho, ProbVector.uniform(2), channel)
    if channel.n_inputs != 2:
        raise DomainError("input optimization is implemented for binary-input channels only")
    W = channel.transition
    s = 1.0 / (1.0 + rho)
    qs = np.linspace(0.0, 1.0, int(round(1 / step)) + 1)
    # vectorized scan over Q = (q, 1 - q)
    inner = qs[:, None] * W[0] ** s + (1 - qs[:, None]) * W[1] ** s
    vals = -np.log((inner ** (1.0 + rho)).sum(axis=1))
    k = int(np.argmax(vals))
    lo, hi = qs[max(k - 1, 0)], qs[min(k + 1, qs.size - 1)]
    _, refined = maximize_on_interval(lambda q: gallager_E0(rho, np.array([q, 1 - q]), channel), lo, hi, grid=3, xtol=1e-10)
    return max(float(vals[k]), refined)


def sphere_packing_exponent(R: float, channel: Channel, method: str = "auto") -> float:
    """``E_sp(R) = sup_{rho >= 0} max_Q E_0(rho, Q) - rho R`` with ``rho`` capped at ``RHO_CAP``.

    ``method="bsc"`` (chosen automatically for a BSC) uses the closed form
    ``d(delta_GV(R) || delta)``.
    """
    if method == "auto":
        method = "bsc" if _is_bsc(channel) else "generic"
    if method == "bsc":
        delta = float(channel.transition[0, 1])
        delta = min(delta, 1 - delta)
        if delta == 0.0:
            return math.inf if R < LOG2 else 0.0
        if delta == 0.5:
            return 0.0
        return sphere_packing_bsc(R, delta)
    if R < 0:
        raise ValueError("rate must be nonnegative")
    # rho = u / (1 - u) maps [0, cap/(1+cap)] onto [0, cap]
    u_max = RHO_CAP / (1 + RHO_CAP)
    _, val = maximize_on_interval(
        lambda u: _best_E0(u / (1 - u), channel) - u / (1 - u) * R, 0.0, u_max, grid=201, xtol=1e-12
    )
    return max(val, 0.0)


def inverse_binary_entropy(h_target: float) -> float:
    """Preimage in ``[0, 1/2]`` of ``h`` (nats)."""
    if not -1e-15 <= h_target <= LOG2 + 1e-15:
        raise ValueError(f"binary entropy target must lie in [0, log 2], got {h_target}")
    if h_target <= 0:
        return 0.0
    if h_target >= LOG2:
        return 0.5
    return solve_increasing(binary_entropy, 0.0, 0.5, h_target, xtol=1e-15)


def sphere_packing_bsc(R: float, delta: float) -> float:
    """``d(h^{-1}(log 2 - R) || delta)`` for a BSC; zero at and above capacity."""
    if not 0.0 < delta < 0.5:
        raise ValueError("crossover probability must lie in (0, 1/2)")
    capacity = LOG2 - binary_entropy(delta)
    if R >= capacity:
        return 0.0
    gv = inverse_binary_entropy(LOG2 - max(R, 0.0))
    return binary_divergence(gv, delta)


def bsc_rates(delta: float) -> tuple[float, float, float]:
    """Cutoff rate, critical rate and capacity of a BSC, in bits."""
    if not 0.0 < delta < 0.5:
        raise ValueError("crossover probability must lie in (0, 1/2)")
    h_bits = lambda p: binary_entropy(p) / LOG2  # noqa: E731
    r0 = 1 - math.log2(1 + math.sqrt(4 * delta * (1 - delta)))
    sd, sdb = math.sqrt(delta), math.sqrt(1 - delta)
    rc = 1 - h_bits(sd / (sd + sdb))
    return r0, rc, 1 - h_bits(delta)


def critical_order(delta: float) -> float:
    """``alpha_c = R_c / R_0`` for a BSC."""
    r0, rc, _ = bsc_rates(delta)
    return rc / r0


def R_alpha(prior, channel: Channel, alpha: float) -> float:
    """Unique ``r in (0, I)`` with ``E_r(r, P_X) = (1/alpha - 1) r``."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    info = mutual_information(prior, channel)
    if info <= 1e-15:
        raise DomainError("channel carries no information under this input")
    slope = 1.0 / alpha - 1.0
    f = lambda r: random_coding_exponent(r, prior, channel)[0] - slope * r  # noqa: E731
    return float(brentq(f, 0.0, info, xtol=1e-12, maxiter=200))


def R_alpha_bsc(delta: float, alpha: float) -> float:
    """BSC threshold: ``alpha R_0`` up to ``alpha_c``, then the ``E_sp`` crossing."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    r0, rc, cap = (v * LOG2 for v in bsc_rates(delta))
    if alpha <= rc / r0:
        return alpha * r0
    slope = 1.0 / alpha - 1.0
    f = lambda r: sphere_packing_bsc(r, delta) - slope * r  # noqa: E731
    return float(brentq(f, rc, cap, xtol=1e-13, maxiter=200))


def feder_merhav_bound(R: float, n: int, prior, channel: Channel) -> tuple[float, float]:
    """Upper bounds on the ensemble-average ``H(X^n|Y^n)`` in nats.

    Returns ``(inf over rho in (0,1], value at the E_r maximizer)``.
    """
    if n < 1:
        raise ValueError("blocklength must be positive")
    info = mutual_information(prior, channel)
    if R > info + 1e-12:
        raise ValueError("rate exceeds the input's mutual information")

    def log_bound(rho):
        return math.log1p(1.0 / rho) - n * (gallager_E0(rho, prior, channel) - rho * R)

    _, lo = maximize_on_interval(lambda r: -log_bound(r), 1e-9, 1.0, grid=201, xtol=1e-12)
    er, rho_star = random_coding_exponent(R, prior, channel)
    at_star = math.inf if rho_star <= 0 else (1 + 1 / rho_star) * math.exp(-n * er)
    return math.exp(-lo), at_star


def exponent_reference(R: float, alpha: float, prior, channel: Channel) -> tuple[float, float]:
    """``(floor, ceiling)`` for the decay rate of the ensemble-average ``H_alpha``.

    The ceiling is ``E_sp(R)``; the floor is ``alpha E_r - (1-alpha) R`` for
    ``alpha < 1`` and ``E_r`` for ``alpha >= 1``.
    """
    er, _ = random_coding_exponent(R, prior, channel)
    floor = er if alpha >= 1 else alpha * er - (1 - alpha) * R
    return floor, sphere_packing_exponent(R, channel)

