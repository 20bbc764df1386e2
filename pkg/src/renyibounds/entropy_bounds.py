"""Sharp upper and lower bounds on the unconditional Renyi entropy.

Upper bounds come from grouping the alphabet (a labeling, a subset, a
single mass, the largest mass); the lower bound from ``p_max`` alone.
Each has an extremal distribution attaining it, built by the
``*_extremal`` helpers.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import DomainError, Order, ProbVector, Tag
from .measures import _lse, _pmf, binary_renyi_divergence

FLOOR_NUDGE = 1e-12


def _check_order(order: Order, allow_one=True):
    if order.value < 0:
        raise DomainError("entropy bounds are stated for nonnegative orders")
    if order.tag is Tag.ONE and not allow_one:
        raise DomainError("order 1 is not covered here")


def stable_floor(x: float) -> int:
    """``floor(x)`` that treats values a hair below an integer as that integer."""
    return int(math.floor(x + FLOOR_NUDGE))


def ub_via_partition(p, labels, alpha) -> float:
    """Bound from a labeling ``f``: ``(1/(1-a)) log sum_y L_y^(1-a) P[f(X)=y]^a``.

    ``labels[x]`` is the class of ``x``; ``L_y`` counts the letters in class ``y``.
    Tight iff ``p`` is flat on every class of positive mass.
    """
    order = Order.of(alpha)
    _check_order(order)
    m = _pmf(p)
    labels = np.asarray(labels)
    if labels.shape != m.shape:
        raise ValueError("one label per letter is required")
    _, inverse = np.unique(labels, return_inverse=True)
    sizes = np.bincount(inverse).astype(float)
    mass = np.bincount(inverse, weights=m)
    on = mass > 0
    sizes, mass = sizes[on], mass[on]
    if order.tag is Tag.ZERO:
        return math.log(sizes.sum())
    if order.tag is Tag.ONE:
        return float(-(mass * np.log(mass / sizes)).sum())
    if order.tag is Tag.POS_INF:
        return float(-math.log((mass / sizes).max()))
    a = order.value
    return float(_lse((1 - a) * np.log(sizes) + a * np.log(mass)) / (1 - a))


def ub_via_subset(p, subset, alpha) -> float:
    """``log M - d_a(P[X in L] || |L|/M)`` for a nonempty proper subset ``L``."""
    order = Order.of(alpha)
    _check_order(order)
    m = _pmf(p)
    idx = np.unique(np.asarray(list(subset), dtype=int))
    if idx.size == 0 or idx.size >= m.size:
        raise ValueError("subset must be nonempty and proper")
    if idx.min() < 0 or idx.max() >= m.size:
        raise ValueError("subset index out of range")
    M = m.size
    return math.log(M) - binary_renyi_divergence(min(float(m[idx].sum()), 1.0), idx.size / M, order)


def ub_via_single_mass(p, alpha) -> tuple[float, int]:
    """Best single-letter bound ``min_x log M - d_a(P(x) || 1/M)`` and its minimizer."""
    order = Order.of(alpha)
    _check_order(order)
    m = _pmf(p)
    # same as log M - d_a(P(x) || 1/M), but with P(X != x) summed directly
    # rather than formed as 1 - P(x), which cancels when P(x) is near 1
    idx = np.arange(m.size)
    vals = [ub_via_partition(m, idx == k, order) for k in idx]
    x = int(np.argmin(vals))
    return float(vals[x]), x


def ub_via_pmax(p_max: float, M: int, alpha) -> float:
    """``log M - d_a(p_max || 1/M)``; needs ``1/M <= p_max <= 1``."""
    order = Order.of(alpha)
    _check_order(order)
    if M < 1 or not (1.0 / M - FLOOR_NUDGE <= p_max <= 1.0):
        raise ValueError(f"p_max must lie in [1/M, 1], got {p_max} with M={M}")
    return math.log(M) - binary_renyi_divergence(max(p_max, 1.0 / M), 1.0 / M, order)


def lb_schur(p_max: float, alpha) -> float:
    """Smallest ``H_a`` among pmfs whose largest mass is ``p_max``."""
    order = Order.of(alpha)
    _check_order(order)
    if not 0.0 < p_max <= 1.0:
        raise ValueError(f"p_max must lie in (0, 1], got {p_max}")
    k = stable_floor(1.0 / p_max)
    rest = max(1.0 - k * p_max, 0.0)
    if rest < FLOOR_NUDGE:
        rest = 0.0
    if order.tag is Tag.ZERO:
        return math.log(k + (rest > 0))
    if order.tag is Tag.POS_INF:
        return -math.log(p_max)
    if order.tag is Tag.ONE:
        val = -k * p_max * math.log(p_max)
        return val - rest * math.log(rest) if rest > 0 else val
    a = order.value
    terms = [math.log(k) + a * math.log(p_max)]
    if rest > 0:
        terms.append(a * math.log(rest))
    return float(_lse(np.array(terms)) / (1 - a))


def schur_extremal(p_max: float, M: int | None = None) -> ProbVector:
    """``floor(1/p_max)`` masses equal to ``p_max`` plus the remainder, zero-padded to ``M``."""
    k = stable_floor(1.0 / p_max)
    rest = max(1.0 - k * p_max, 0.0)
    masses = [p_max] * k + ([rest] if rest > FLOOR_NUDGE else [])
    if M is not None:
        if M < len(masses):
            raise ValueError("alphabet too small for this p_max")
        masses += [0.0] * (M - len(masses))
    return ProbVector.from_weights(masses)


def pmax_extremal(p_max: float, M: int) -> ProbVector:
    """Mode ``p_max`` with the rest spread evenly over ``M - 1`` letters."""
    if M == 1:
        return ProbVector(np.ones(1))
    return ProbVector(np.array([p_max] + [(1 - p_max) / (M - 1)] * (M - 1)))
