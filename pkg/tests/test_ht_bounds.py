import math

import numpy as np
import pytest
from hypothesis import given, settings

from renyibounds.distributions import JointPMF, ProbVector, example_joint, map_error, pairwise_restriction
from renyibounds.ht_bounds import (
    all_ht_bounds,
    chernoff_sum_bound,
    generalized_hellman_raviv,
    hellman_raviv_binary,
    leang_johnson_bound,
    pairwise_sum_bound,
    pairwise_sum_via_tests,
)
from renyibounds.measures import renyi_divergence
from strategies import joints

EX1 = example_joint("tables")


def test_hellman_raviv_identical_rows():
    p = [0.2, 0.5, 0.3]
    rep = hellman_raviv_binary(0.3, p, p)
    induced = JointPMF.from_weights(np.array([0.3 * np.array(p), 0.7 * np.array(p)]))
    assert rep.value == pytest.approx(map_error(induced), abs=1e-12)


def test_hellman_raviv_disjoint():
    assert hellman_raviv_binary(0.5, [1, 0], [0, 1]).value == 0.0


def test_bhattacharyya_specialization():
    p0, p1 = np.array([0.6, 0.3, 0.1]), np.array([0.1, 0.3, 0.6])
    rho = np.sqrt(p0 * p1).sum()
    # symmetric pair with equal priors: the infimum sits at alpha = 1/2
    rep = hellman_raviv_binary(0.5, p0, p1)
    assert rep.value == pytest.approx(0.5 * rho, abs=1e-12)
    assert rep.inner_arg == pytest.approx(0.5, abs=1e-6)


def test_hellman_raviv_divergence_form():
    p0, p1, pi0 = np.array([0.5, 0.4, 0.1]), np.array([0.2, 0.2, 0.6]), 0.4
    grid = np.linspace(1e-4, 1 - 1e-4, 20001)
    vals = [(1 - pi0) ** a * pi0 ** (1 - a) * math.exp((a - 1) * renyi_divergence(p1, p0, a)) for a in grid]
    assert hellman_raviv_binary(pi0, p0, p1).value == pytest.approx(min(vals), abs=1e-9)


def test_generalized_no_observation_tight():
    prior = np.array([0.5, 0.3, 0.2])
    joint = JointPMF.from_weights(np.outer(prior, [0.25, 0.75]))
    assert generalized_hellman_raviv(joint).value == pytest.approx(1 - prior.max(), abs=1e-12)


def test_generalized_binary_matches_pair():
    w = np.array([[0.1, 0.2, 0.15], [0.3, 0.05, 0.2]])
    joint = JointPMF(w)
    pri = joint.prior.masses
    rep = hellman_raviv_binary(pri[0], w[0] / pri[0], w[1] / pri[1])
    assert generalized_hellman_raviv(joint).value == pytest.approx(rep.value, abs=1e-12)


def test_pairwise_binary_is_exact():
    joint = JointPMF.from_weights([[3, 1, 2], [1, 4, 2]])
    assert pairwise_sum_bound(joint).value == pytest.approx(map_error(joint), abs=1e-15)
    assert leang_johnson_bound(joint).value == pytest.approx(map_error(joint), abs=1e-15)


def test_pairwise_deterministic_zero():
    assert pairwise_sum_bound(JointPMF.from_weights(np.eye(3))).value == 0.0


def test_leang_johnson_example_one():
    worst = max(pairwise_restriction(EX1, i, j).error for i, j in ((0, 1), (0, 2), (1, 2)))
    assert leang_johnson_bound(EX1).value == pytest.approx(3 * worst, abs=1e-15)


def test_leang_johnson_blind_flagged():
    rep = leang_johnson_bound(JointPMF.from_weights(np.ones((3, 1))))
    assert rep.value == pytest.approx(1.5)
    assert "vacuous" in rep.domain_note


def test_chernoff_equiprobable_halves():
    w = np.array([[0.5, 0.3, 0.2], [0.1, 0.6, 0.3], [0.3, 0.3, 0.4]]) / 3
    _, weak, refined = chernoff_sum_bound(JointPMF(w))
    assert refined.value == pytest.approx(weak.value / 2, abs=1e-15)


def test_chernoff_identical_rows():
    joint = JointPMF.from_weights(np.tile([0.2, 0.8], (4, 1)))
    _, weak, _ = chernoff_sum_bound(joint)
    assert weak.value == pytest.approx(3.0)
    assert "vacuous" in weak.domain_note


def test_example_one_all_bounds():
    eps = 21 / 45
    reps = all_ht_bounds(EX1)
    for r in reps:
        assert min(r.value, 1.0) >= eps - 1e-12, r.name
    assert generalized_hellman_raviv(EX1).value >= eps
    assert pairwise_sum_bound(EX1).value == pytest.approx(pairwise_sum_via_tests(EX1), abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(joints())
def test_two_routes_agree(joint):
    assert pairwise_sum_bound(joint).value == pytest.approx(pairwise_sum_via_tests(joint), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(joints(max_M=5, max_N=5))
def test_bounds_valid(joint):
    eps = map_error(joint)
    for r in all_ht_bounds(joint):
        assert min(1.0, r.value) >= eps - 1e-12, r.name


@settings(max_examples=60, deadline=None)
@given(joints(max_M=5, max_N=5))
def test_renyi_sum_ordering(joint):
    pair_sum, weak, _ = chernoff_sum_bound(joint)
    M = joint.M
    assert pair_sum.value <= weak.value + 1e-12
    assert weak.value <= M * (M - 1) / 2 * weak.value / (M - 1) + 1e-12


@settings(max_examples=40, deadline=None)
@given(joints(max_M=2, max_N=5, positive=True))
def test_binary_consistency(joint):
    pair_sum, _, _ = chernoff_sum_bound(joint)
    assert pair_sum.value == pytest.approx(generalized_hellman_raviv(joint).value, abs=1e-9)


def test_zero_prior_hypothesis_dropped():
    joint = JointPMF.from_weights([[1, 2], [0, 0], [2, 1]])
    reps = chernoff_sum_bound(joint)
    assert all(math.isfinite(r.value) for r in reps)
    assert min(reps[0].value, 1.0) >= map_error(joint) - 1e-12


def test_prior_input_types():
    rep = hellman_raviv_binary(0.5, ProbVector.from_weights([1, 1]), [0.5, 0.5])
    assert rep.value == pytest.approx(0.5)
