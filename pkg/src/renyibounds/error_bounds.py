"""Bounds linking ``H_alpha(X|Y)`` and the minimum error probability ``eps``.

Upper bounds on the conditional entropy given ``eps`` (Fano-type, list
decoding), lower bounds on ``eps`` given conditional entropies (implicit,
explicit, negative and positive orders) and the converse pair
``lb_H_from_error`` / ``ub_error_from_H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._optimize import golden_section, solve_increasing
from .distributions import DomainError, JointPMF, Order, Tag, map_error
from .entropy_bounds import FLOOR_NUDGE, stable_floor
from .measures import arimoto_conditional, binary_divergence, binary_renyi_divergence


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: float
    order: Order | None = None
    domain_note: str = ""
    inner_arg: float | None = None  # optimizing alpha, rho or k when there is one

    def __float__(self) -> float:
        return self.value


def clamped(name, value, lo, hi, order=None, inner_arg=None, note="") -> BoundReport:
    """Clip a bound to ``[lo, hi]`` and say so in the note when clipping happened."""
    if value < lo:
        note = note or f"vacuous: raw value {value:.6g} below {lo:g}"
        value = lo
    elif value > hi:
        note = note or f"vacuous: raw value {value:.6g} above {hi:g}"
        value = hi
    return BoundReport(name, float(value), order, note, inner_arg)


def _positive_order(alpha) -> Order:
    order = Order.of(alpha)
    if order.value <= 0:
        raise DomainError("this bound needs alpha > 0")
    return order


def _check_eps(eps: float, M: int, L: int = 1) -> float:
    top = 1.0 - L / M
    if not -FLOOR_NUDGE <= eps <= top + FLOOR_NUDGE:
        raise ValueError(f"error probability must lie in [0, {top:g}], got {eps}")
    return min(max(eps, 0.0), top)


# --------------------------------------------------------------------------
# conditional entropy upper bounds


def fano_upper_H(eps: float, M: int, alpha) -> float:
    """Largest ``H_a(X|Y)`` compatible with error ``eps``: ``log M - d_a(eps || 1 - 1/M)``."""
    order = Order.of(alpha)
    if order.value < 0:
        raise DomainError("Fano-type bound needs alpha >= 0")
    eps = _check_eps(eps, M)
    if order.tag is Tag.ZERO:
        return math.log(M) if eps > 0 else 0.0
    return max(math.log(M) - binary_renyi_divergence(eps, 1.0 - 1.0 / M, order), 0.0)


def list_fano_upper(P_L: float, M: int, L: int, alpha) -> float:
    """List-decoding version: ``log M - d_a(P_L || 1 - L/M)`` for list size ``L``."""
    order = _positive_order(alpha)
    if not 1 <= L <= M:
        raise ValueError("list size must lie in [1, M]")
    P_L = _check_eps(P_L, M, L)
    return max(math.log(M) - binary_renyi_divergence(P_L, 1.0 - L / M, order), 0.0)


def fano_upper_equality_posterior(eps: float, M: int, L: int = 1):
    """Posterior attaining the (list) Fano bound: ``L`` masses ``(1-eps)/L``, the rest ``eps/(M-L)``."""
    return np.array([(1 - eps) / L] * L + [eps / (M - L)] * (M - L))


# --------------------------------------------------------------------------
# lower bounds on eps


def fano_lb_error(H: float, M: int, alpha) -> float:
    """Smallest ``eps`` with ``fano_upper_H(eps) >= H`` (numerical inversion)."""
    order = _positive_order(alpha)
    logM = math.log(M)
    if not -FLOOR_NUDGE <= H <= logM + FLOOR_NUDGE:
        raise ValueError(f"entropy must lie in [0, log M], got {H}")
    if H <= 0:
        return 0.0
    if H >= logM:
        return 1.0 - 1.0 / M
    return solve_increasing(lambda e: fano_upper_H(e, M, order), 0.0, 1.0 - 1.0 / M, H, xtol=1e-14)


def lb_error_half(joint: JointPMF) -> float:
    """Explicit bound through ``H_{1/2}(X|Y)``."""
    M = joint.M
    if M < 2:
        raise ValueError("need at least two hypotheses")
    xm1 = min(max(math.expm1(math.log(M) - arimoto_conditional(joint, 0.5)), 0.0), M - 1.0)
    return (1 - 1 / M) / (1 + xm1) * (1 - math.sqrt(xm1 / (M - 1))) ** 2


def lb_error_quadratic(joint: JointPMF) -> float:
    """Explicit bound through ``H_2(X|Y)``; coincides with ``fano_lb_error`` at order 2."""
    M = joint.M
    if M < 2:
        raise ValueError("need at least two hypotheses")
    xm1 = min(max(math.expm1(math.log(M) - arimoto_conditional(joint, 2)), 0.0), M - 1.0)
    return (1 - 1 / M) * (1 - math.sqrt(xm1 / (M - 1)))


def lb_error_negative_alpha(joint: JointPMF, alpha, L: int = 1) -> float:
    """``exp(((1-a)/a) (H_a(X|Y) - log(M-L)))`` for ``a < 0``; bounds the list error ``P_L``."""
    order = Order.of(alpha)
    if order.value >= 0:
        raise DomainError("negative-order bound needs alpha < 0")
    if not 1 <= L < joint.M:
        raise ValueError("list size must lie in [1, M)")
    H = arimoto_conditional(joint, order)
    coef = -1.0 if order.tag is Tag.NEG_INF else (1 - order.value) / order.value
    return math.exp(coef * (H - math.log(joint.M - L)))


def optimize_negative_alpha(joint: JointPMF, L: int = 1, lo=-50.0, hi=-0.01, step=0.01):
    """Tightest negative-order bound: grid over ``[lo, hi]`` then golden-section refinement.

    Returns ``(bound, alpha_star)``.
    """
    grid = np.round(np.arange(lo, hi + step / 2, step), 10)
    vals = np.array([lb_error_negative_alpha(joint, a, L) for a in grid])
    k = int(np.argmax(vals))
    a_lo, a_hi = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    a_star, neg = golden_section(lambda a: -lb_error_negative_alpha(joint, a, L), a_lo, a_hi, tol=1e-10)
    if -neg < vals[k]:
        return float(vals[k]), float(grid[k])
    return float(-neg), float(a_star)


def lb_error_revholder(joint: JointPMF, alpha, L: int = 1) -> float:
    """``1 - exp(((1-a)/a) (H_a(X|Y) - log L))`` for ``a > 1``; may be negative when vacuous."""
    order = Order.of(alpha)
    if order.value <= 1:
        raise DomainError("this bound needs alpha > 1")
    if not 1 <= L <= joint.M:
        raise ValueError("list size must lie in [1, M]")
    H = arimoto_conditional(joint, order)
    coef = -1.0 if order.tag is Tag.POS_INF else (1 - order.value) / order.value
    return -math.expm1(coef * (H - math.log(L)))


# --------------------------------------------------------------------------
# converse pair: entropy from error and error from entropy


def _g_coeffs(k: int, s: float) -> tuple[float, float]:
    """Slope and intercept of the segment ``k`` of the piecewise-linear ``g``; ``s = 1/alpha``."""
    slope = k * (k + 1) ** s - k**s * (k + 1)
    intercept = k ** (s + 1) - (k - 1) * (k + 1) ** s
    return slope, intercept


def _phi_coeffs(k: int) -> tuple[float, float]:
    slope = k * (k + 1) * math.log((k + 1) / k)
    intercept = (1 - k * k) * math.log(k + 1) + k * k * math.log(k)
    return slope, intercept


def lb_H_from_error(eps: float, alpha) -> float:
    """Smallest ``H_a(X|Y)`` compatible with error ``eps`` (alphabet-free)."""
    order = _positive_order(alpha)
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"error probability must lie in [0, 1), got {eps}")
    if order.tag is Tag.POS_INF:
        return lb_H_weak(eps)
    k = stable_floor(1.0 / (1.0 - eps))
    if order.tag is Tag.ONE:
        slope, intercept = _phi_coeffs(k)
        return max(slope * eps + intercept, 0.0)
    a = order.value
    slope, intercept = _g_coeffs(k, 1.0 / a)
    return max(a / (1 - a) * math.log(slope * eps + intercept), 0.0)


def lb_H_weak(eps: float) -> float:
    """``log 1/(1-eps)``, valid for every order."""
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"error probability must lie in [0, 1), got {eps}")
    return -math.log1p(-eps)


def ub_error_from_H(H: float, alpha) -> float:
    """Largest ``eps`` compatible with ``H_a(X|Y) = H``: inverts ``lb_H_from_error``."""
    order = _positive_order(alpha)
    if H < 0:
        raise ValueError("entropy must be nonnegative")
    if order.tag is Tag.POS_INF:
        return -math.expm1(-H)
    k = max(stable_floor(math.exp(H)), 1)
    if order.tag is Tag.ONE:
        slope, intercept = _phi_coeffs(k)
        return (H - intercept) / slope
    a = order.value
    slope, intercept = _g_coeffs(k, 1.0 / a)
    return (math.exp((1 - a) / a * H) - intercept) / slope


def vanishing_error_source(n: int, M: int, alpha: float) -> np.ndarray:
    """Masses on ``M^n`` letters with error ``beta^-n`` yet ``H_alpha / n -> (1/2) log M``.

    ``beta = M^((1-alpha)/(2 alpha))`` for ``alpha in (0, 1)``; with no
    observation the MAP error is ``1 - p_max = beta^-n``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    size = M**n
    tail = float(M) ** (-n * (1 - alpha) / (2 * alpha))
    masses = np.full(size, tail / (size - 1))
    masses[0] = 1.0 - tail
    return masses


def bhattacharyya_coefficient(joint: JointPMF) -> float:
    """``sum_y sqrt(P(y|0) P(y|1))`` for a binary hypothesis."""
    if joint.M != 2:
        raise ValueError("Bhattacharyya coefficient needs M = 2")
    p0, p1 = joint.conditional(0).masses, joint.conditional(1).masses
    return float(min(np.sqrt(p0 * p1).sum(), 1.0))


def kailath_lower_bound(rho: float) -> float:
    return 0.5 * (1 - math.sqrt(max(1 - rho * rho, 0.0)))


# --------------------------------------------------------------------------
# aggregate report used by the CLI


def error_bound_reports(joint: JointPMF, alpha) -> list[BoundReport]:
    """Every bound applicable at order ``alpha`` on ``joint``, clamped to ``[0, 1 - 1/M]``."""
    order = Order.of(alpha)
    M = joint.M
    top = 1.0 - 1.0 / M
    eps = map_error(joint)
    out = [BoundReport("map_error", eps, None)]
    if order.value > 0:
        H = arimoto_conditional(joint, order)
        out.append(BoundReport("H_cond", H, order))
        out.append(clamped("fano_lb_error", fano_lb_error(min(H, math.log(M)), M, order), 0, top, order))
        out.append(clamped("ub_error_from_H", ub_error_from_H(H, order), 0, top, order))
        out.append(BoundReport("fano_upper_H", fano_upper_H(eps, M, order), order))
        out.append(BoundReport("lb_H_from_error", lb_H_from_error(eps, order), order))
    if order.value > 1:
        out.append(clamped("lb_error_revholder", lb_error_revholder(joint, order), 0, top, order))
    if order.value < 0:
        if joint.positive_posteriors():
            out.append(clamped("lb_error_negative_alpha", lb_error_negative_alpha(joint, order), 0, top, order))
        else:
            out.append(BoundReport("lb_error_negative_alpha", math.nan, order, "undefined: zero posterior"))
    return out


def shannon_fano_upper(eps: float, M: int) -> float:
    """Classical Fano: ``h(eps) + eps log(M-1)``."""
    eps = _check_eps(eps, M)
    return math.log(M) - binary_divergence(eps, 1 - 1 / M)
