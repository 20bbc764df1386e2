"""Upper bounds on the M-ary MAP error built from binary tests.

All inner infima over ``alpha in (0, 1)`` minimize the convex
``log sum_y a(y)^alpha b(y)^(1-alpha)`` on the closed interval (its
continuous extension at the endpoints) with ``min_log_affinity``.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .distributions import JointPMF, ProbVector, pairwise_restriction
from .error_bounds import BoundReport
from .measures import chernoff_information, min_log_affinity


def _vacuous_note(value: float) -> str:
    return "vacuous: exceeds 1" if value > 1 else ""


def _inf_affinity(a, b) -> tuple[float, float]:
    """``inf_alpha sum a^alpha b^(1-alpha)`` and the minimizing alpha."""
    log_val, a_star = min_log_affinity(a, b)
    return (0.0 if log_val == -math.inf else math.exp(log_val)), a_star


def hellman_raviv_binary(prior0: float, P0, P1) -> BoundReport:
    """``inf_a P[H1]^a P[H0]^(1-a) exp((a-1) D_a(P1||P0))``."""
    if not 0.0 <= prior0 <= 1.0:
        raise ValueError("prior must lie in [0, 1]")
    p0 = P0.masses if isinstance(P0, ProbVector) else ProbVector(np.asarray(P0, float)).masses
    p1 = P1.masses if isinstance(P1, ProbVector) else ProbVector(np.asarray(P1, float)).masses
    value, a_star = _inf_affinity((1 - prior0) * p1, prior0 * p0)
    return BoundReport("hellman_raviv", value, None, _vacuous_note(value), a_star)


def generalized_hellman_raviv(joint: JointPMF) -> BoundReport:
    """Best leave-one-out Hellman-Raviv bound over ordered pairs ``i != k``.

    ``Pbar[H_i] * Pbar_i`` is the mixture of all rows except ``i``, i.e.
    ``P_Y - P_XY(i, .)``, so no division by ``1 - P[H_i]`` is needed.
    """
    if joint.M < 2:
        raise ValueError("need at least two hypotheses")
    out_y = joint.matrix.sum(axis=0)
    rest = np.clip(out_y[None, :] - joint.matrix, 0.0, None)
    best = (math.inf, None, None)
    # (i, k) and (k, i) give the same infimum, at alpha and 1 - alpha
    for i, k in itertools.combinations(range(joint.M), 2):
        value, a_star = _inf_affinity(rest[i], rest[k])
        if value < best[0]:
            best = (value, a_star, (i, k))
    value, a_star, pair = best
    return BoundReport("generalized_hellman_raviv", value, None, _vacuous_note(value) or f"pair={pair}", a_star)


def pairwise_sum_bound(joint: JointPMF) -> BoundReport:
    """``sum_{i<j} E[min(P[H_i|Y], P[H_j|Y])] = sum_y sum_{i<j} min(P_XY(i,y), P_XY(j,y))``."""
    P = joint.matrix
    total = 0.0
    for i, j in itertools.combinations(range(joint.M), 2):
        total += float(np.minimum(P[i], P[j]).sum())
    return BoundReport("pairwise_sum", total, None, _vacuous_note(total))


def pairwise_sum_via_tests(joint: JointPMF) -> float:
    """Same sum, routed through the restricted binary tests: ``sum (pi_i + pi_j) eps_ij``."""
    prior = joint.prior.masses
    total = 0.0
    for i, j in itertools.combinations(range(joint.M), 2):
        if prior[i] + prior[j] > 0:
            total += (prior[i] + prior[j]) * pairwise_restriction(joint, i, j).error
    return total


def leang_johnson_bound(joint: JointPMF) -> BoundReport:
    """``M (M-1) / 2 * max_{i != j} eps_ij``; may exceed 1 and is then left unclamped."""
    prior = joint.prior.masses
    worst = 0.0
    for i, j in itertools.combinations(range(joint.M), 2):
        if prior[i] + prior[j] > 0:
            worst = max(worst, pairwise_restriction(joint, i, j).error)
    value = joint.M * (joint.M - 1) / 2 * worst
    return BoundReport("leang_johnson", value, None, _vacuous_note(value), None)


def chernoff_sum_bound(joint: JointPMF) -> tuple[BoundReport, BoundReport, BoundReport]:
    """Three Chernoff-type bounds: the pairwise Renyi sum, ``(M-1) e^{-C}`` and its equiprobable refinement.

    Hypotheses with zero prior are dropped; they contribute nothing to the error.
    """
    P = joint.matrix
    prior = joint.prior.masses
    live = [i for i in range(joint.M) if prior[i] > 0]
    M = joint.M
    pair_sum = 0.0
    c_min, c_arg = math.inf, None
    for i, j in itertools.combinations(live, 2):
        pair_sum += _inf_affinity(P[i], P[j])[0]
        c, a_star = chernoff_information(P[i] / prior[i], P[j] / prior[j])
        if c < c_min:
            c_min, c_arg = c, a_star
    if len(live) < 2:
        zero = BoundReport("chernoff", 0.0, None, "single hypothesis with positive prior")
        return BoundReport("renyi_pairwise_sum", 0.0), zero, zero
    factor = math.exp(-c_min)
    spread = float(sum(abs(prior[i] - prior[j]) for i, j in itertools.combinations(range(M), 2)))
    weak = (M - 1) * factor
    refined = ((M - 1) / 2 + spread / 2) * factor
    return (
        BoundReport("renyi_pairwise_sum", pair_sum, None, _vacuous_note(pair_sum)),
        BoundReport("chernoff_M_minus_1", weak, None, _vacuous_note(weak), c_arg),
        BoundReport("chernoff_refined", refined, None, _vacuous_note(refined), c_arg),
    )


def all_ht_bounds(joint: JointPMF) -> list[BoundReport]:
    reports = [generalized_hellman_raviv(joint), pairwise_sum_bound(joint), leang_johnson_bound(joint)]
    reports.extend(chernoff_sum_bound(joint))
    return reports

