"""Renyi information measures on finite alphabets (natural logarithms).

Orders may be passed as floats, strings such as ``"inf"`` or ``"1/2"``, or
:class:`~renyibounds.distributions.Order`.  The limits at 0, 1 and
``+-inf`` use closed forms rather than the generic power sums.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from ._optimize import minimize_on_interval
from .distributions import Channel, DomainError, JointPMF, Order, ProbVector, Tag

LOG2 = math.log(2.0)


def to_bits(nats: float) -> float:
    return nats / LOG2


def from_bits(bits: float) -> float:
    return bits * LOG2


def _pmf(p) -> np.ndarray:
    if isinstance(p, ProbVector):
        return p.masses
    return ProbVector(np.asarray(p, dtype=float)).masses


def _safe_log(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(x)


def _lse(a: np.ndarray, axis=None):
    with np.errstate(divide="ignore", invalid="ignore"):
        return logsumexp(a, axis=axis)


# --------------------------------------------------------------------------
# Entropies


def shannon_entropy(p) -> float:
    m = _pmf(p)
    m = m[m > 0]
    return float(-(m * np.log(m)).sum())


def renyi_entropy(p, alpha) -> float:
    """``H_alpha(P)`` in nats for any extended-real order.

    Negative orders only see the support (zero masses are dropped).
    """
    order = Order.of(alpha)
    m = _pmf(p)
    s = m[m > 0]
    if order.tag is Tag.ZERO:
        return math.log(s.size)
    if order.tag is Tag.ONE:
        return shannon_entropy(s)
    if order.tag is Tag.POS_INF:
        return -math.log(s.max())
    if order.tag is Tag.NEG_INF:
        return -math.log(s.min())
    a = order.value
    return float(_lse(a * np.log(s)) / (1.0 - a))


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log(p) - (1 - p) * math.log1p(-p)


def binary_renyi_entropy(p: float, alpha) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return renyi_entropy(np.array([p, 1.0 - p]), alpha)


def arimoto_conditional(joint: JointPMF, alpha) -> float:
    """Arimoto-Renyi conditional entropy ``H_alpha(X|Y)`` in nats.

    Uses ``sum_y P_Y(y) ||P_{X|Y}(.|y)||_a = sum_y ||P_XY(., y)||_a``.
    Orders ``alpha <= 0`` need every posterior mass to be strictly positive.
    """
    order = Order.of(alpha)
    sub = joint.matrix[:, joint.live_columns]
    if order.value <= 0 and np.any(sub <= 0):
        raise DomainError(
            "orders <= 0 require strictly positive posteriors P_{X|Y}(x|y) > 0"
        )
    if order.tag is Tag.POS_INF:
        return float(-math.log(sub.max(axis=0).sum()))
    if order.tag is Tag.NEG_INF:
        return float(-math.log(sub.min(axis=0).sum()))
    if order.tag is Tag.ZERO:
        return math.log(int((sub > 0).sum(axis=0).max()))
    if order.tag is Tag.ONE:
        py = sub.sum(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(sub > 0, sub * np.log(py / sub), 0.0)
        return float(max(terms.sum(), 0.0))
    a = order.value
    log_norms = _lse(a * _safe_log(sub), axis=0) / a
    return float(a / (1.0 - a) * _lse(log_norms))


def conditional_shannon_entropy(joint: JointPMF) -> float:
    return arimoto_conditional(joint, 1)


# --------------------------------------------------------------------------
# Divergences


def log_affinity(a, b, alpha: float) -> float:
    """``log sum_i a_i^alpha b_i^(1-alpha)`` for nonnegative vectors, alpha in [0, 1].

    At the endpoints the continuous extensions ``log sum_{a>0} b`` and
    ``log sum_{b>0} a`` are used.  Returns ``-inf`` for disjoint supports.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    both = (a > 0) & (b > 0)
    if alpha <= 0.0:
        return float(_safe_log(b[a > 0].sum()))
    if alpha >= 1.0:
        return float(_safe_log(a[b > 0].sum()))
    if not np.any(both):
        return -math.inf
    return float(_lse(alpha * np.log(a[both]) + (1 - alpha) * np.log(b[both])))


def min_log_affinity(a, b, grid: int = 41, tol: float = 1e-13) -> tuple[float, float]:
    """``min_{alpha in [0,1]} log sum a^alpha b^(1-alpha)`` and its minimizer.

    On the common support the objective is a smooth convex function whose
    endpoint values match ``log_affinity``'s extensions, so a vectorized grid
    scan followed by safeguarded Newton steps suffices.  Disjoint supports
    give ``(-inf, 0.5)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    both = (a > 0) & (b > 0)
    if not np.any(both):
        return -math.inf, 0.5
    la, lb = np.log(a[both]), np.log(b[both])
    d = la - lb
    ts = np.linspace(0.0, 1.0, grid)
    vals = _lse(lb[None, :] + ts[:, None] * d[None, :], axis=1)
    k = int(np.argmin(vals))
    lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, grid - 1)]

    def derivs(t):
        z = lb + t * d
        w = np.exp(z - z.max())
        w /= w.sum()
        m1 = float((w * d).sum())
        return m1, float((w * d * d).sum()) - m1 * m1

    x = float(ts[k])
    for _ in range(60):
        g, h = derivs(x)
        if abs(g) <= tol:
            break
        if g > 0:
            hi = x
        else:
            lo = x
        step = x - g / h if h > 0 else 0.5 * (lo + hi)
        x = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= tol:
            break
    best = float(_lse(lb + x * d))
    if vals[k] < best:
        return float(vals[k]), float(ts[k])
    return best, x


def kl_divergence(p, q) -> float:
    p, q = _pmf(p), _pmf(q)
    on = p > 0
    if np.any(q[on] == 0):
        return math.inf
    return float(max((p[on] * np.log(p[on] / q[on])).sum(), 0.0))


def renyi_divergence(p, q, alpha) -> float:
    """``D_alpha(P||Q)`` in nats for alpha in ``[0, inf]``; ``+inf`` where undefined."""
    order = Order.of(alpha)
    if order.value < 0:
        raise ValueError("Renyi divergence is defined here for nonnegative orders")
    p, q = _pmf(p), _pmf(q)
    if p.shape != q.shape:
        raise ValueError("distributions live on different alphabets")
    on = p > 0
    if order.tag is Tag.ZERO:
        mass = q[on].sum()
        return math.inf if mass <= 0 else float(max(-math.log(mass), 0.0))
    if order.tag is Tag.ONE:
        return kl_divergence(p, q)
    if order.tag is Tag.POS_INF:
        if np.any(q[on] == 0):
            return math.inf
        return float(max(math.log((p[on] / q[on]).max()), 0.0))
    a = order.value
    if a < 1:
        la = log_affinity(p, q, a)
        return math.inf if la == -math.inf else float(max(la / (a - 1.0), 0.0))
    if np.any(q[on] == 0):
        return math.inf
    lse = _lse(a * np.log(p[on]) + (1 - a) * np.log(q[on]))
    return float(max(lse / (a - 1.0), 0.0))


def binary_divergence(p: float, q: float) -> float:
    return renyi_divergence(np.array([p, 1 - p]), np.array([q, 1 - q]), 1)


def binary_renyi_divergence(p: float, q: float, alpha) -> float:
    """``d_alpha(p||q) = D_alpha([p, 1-p] || [q, 1-q])``, continuously extended to ``[0,1]^2``."""
    for v in (p, q):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {v}")
    return renyi_divergence(np.array([p, 1.0 - p]), np.array([q, 1.0 - q]), alpha)


def chernoff_information(p, q) -> tuple[float, float | None]:
    """``C(P||Q) = sup_{a in (0,1)} (1-a) D_a(P||Q)`` and the maximizing order.

    The maximizer is ``None`` when ``P = Q`` (objective identically zero).
    """
    p, q = _pmf(p), _pmf(q)
    if np.array_equal(p, q):
        return 0.0, None
    # (1-a) D_a = -log sum p^a q^(1-a); that log-sum is convex in a
    fmin, a_star = min_log_affinity(p, q)
    if fmin == -math.inf:
        return math.inf, a_star
    return float(max(-fmin, 0.0)), a_star


# --------------------------------------------------------------------------
# Channel quantities


def gallager_E0(rho: float, prior, channel: Channel) -> float:
    """Gallager's function ``E_0(rho, P_X)`` in nats, for ``rho > -1``."""
    if rho <= -1:
        raise ValueError("E_0 requires rho > -1")
    px = _pmf(prior)
    s = 1.0 / (1.0 + rho)
    inner = _lse(_safe_log(px)[:, None] + s * _safe_log(channel.transition), axis=0)
    return float(-_lse((1.0 + rho) * inner))


def mutual_information(prior, channel: Channel) -> float:
    joint = JointPMF.from_prior_channel(ProbVector(_pmf(prior)), channel)
    return renyi_divergence(joint.matrix.ravel(), np.outer(joint.prior.masses, joint.output.masses).ravel(), 1)


def alpha_mutual_information(prior, channel: Channel, alpha) -> float:
    """Sibson's ``I_alpha(P_X, P_{Y|X})`` for alpha in ``(0, inf]``."""
    order = Order.of(alpha)
    if order.value <= 0:
        raise DomainError("alpha-mutual information needs alpha > 0")
    if order.tag is Tag.ONE:
        return mutual_information(prior, channel)
    if order.tag is Tag.POS_INF:
        px = _pmf(prior)
        return float(max(math.log(channel.transition[px > 0].max(axis=0).sum()), 0.0))
    a = order.value
    return float(a / (1.0 - a) * gallager_E0(1.0 / a - 1.0, prior, channel))


def scaled_distribution(prior, alpha: float) -> ProbVector:
    """Normalized ``P_X^alpha``."""
    px = _pmf(prior)
    logs = np.where(px > 0, alpha * _safe_log(np.where(px > 0, px, 1.0)), -np.inf)
    return ProbVector(np.exp(logs - _lse(logs)))


def scaled_distribution_gap(prior, channel: Channel, alpha) -> tuple[ProbVector, float]:
    """``H_alpha(X) - H_alpha(X|Y)`` through ``E_0`` evaluated at the scaled prior."""
    order = Order.of(alpha)
    if order.tag is not Tag.FINITE or order.value <= 0:
        raise DomainError("scaled-distribution gap needs alpha in (0,1) or (1,inf)")
    a = order.value
    scaled = scaled_distribution(prior, a)
    return scaled, float(a / (1.0 - a) * gallager_E0(1.0 / a - 1.0, scaled, channel))
