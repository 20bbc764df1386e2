import math

import mpmath as mp
import numpy as np
import pytest

import oracles
from renyibounds.distributions import Channel, DomainError, ProbVector
from renyibounds.exponents import (
    R_alpha,
    R_alpha_bsc,
    bsc_rates,
    critical_order,
    exponent_reference,
    feder_merhav_bound,
    inverse_binary_entropy,
    list_exponent,
    random_coding_exponent,
    sphere_packing_bsc,
    sphere_packing_exponent,
)
from renyibounds.measures import LOG2, binary_divergence, from_bits, gallager_E0, mutual_information, to_bits

DELTA = 0.110
BSC = Channel.bsc(DELTA)
U = ProbVector.uniform(2)


def r0_oracle(d):
    d = mp.mpf(d)
    return 1 - mp.log(1 + mp.sqrt(4 * d * (1 - d)), 2)


def dense_max(f, lo, hi, step):
    grid = np.arange(lo, hi + step / 2, step)
    return max(f(r) for r in grid)


def test_bsc_rates_example():
    r0, rc, cap = bsc_rates(DELTA)
    assert cap == pytest.approx(0.5, abs=5e-4)
    assert rc == pytest.approx(0.1731, abs=5e-5)
    assert r0 == pytest.approx(float(r0_oracle(DELTA)), abs=1e-14)
    assert critical_order(DELTA) == pytest.approx(0.5791, abs=5e-4)


def test_bsc_rates_noiseless_limit():
    for v in bsc_rates(1e-12):
        assert v == pytest.approx(1.0, abs=1e-4)
    with pytest.raises(ValueError):
        bsc_rates(0.5)


def test_rate_ordering():
    for d in np.linspace(0.01, 0.49, 25):
        r0, rc, cap = bsc_rates(float(d))
        assert 0 <= rc <= r0 <= cap


def test_inverse_binary_entropy():
    assert inverse_binary_entropy(LOG2) == 0.5
    assert inverse_binary_entropy(0.0) == 0.0
    assert inverse_binary_entropy(from_bits(0.5)) == pytest.approx(0.110, abs=5e-4)
    h = 0.3
    assert inverse_binary_entropy(h) == pytest.approx(float(oracles.inverse_binary_entropy(h)), abs=1e-12)
    with pytest.raises(ValueError):
        inverse_binary_entropy(1.0)


def test_random_coding_capacity_and_zero_rate():
    cap = mutual_information(U, BSC)
    assert random_coding_exponent(cap, U, BSC)[0] == pytest.approx(0.0, abs=1e-12)
    val, rho = random_coding_exponent(0.0, U, BSC)
    assert val == pytest.approx(gallager_E0(1.0, U, BSC), abs=1e-12)
    assert rho == pytest.approx(1.0)


def test_random_coding_at_critical_rate():
    r0, rc, _ = bsc_rates(DELTA)
    assert to_bits(random_coding_exponent(from_bits(rc), U, BSC)[0]) == pytest.approx(r0 - rc, abs=1e-9)


def test_random_coding_dense_grid():
    R = from_bits(0.3)
    val, rho = random_coding_exponent(R, U, BSC)
    oracle = dense_max(lambda r: float(oracles.gallager_E0(r, U.masses, BSC.transition)) - r * R, 0, 1, 1e-4)
    assert val == pytest.approx(oracle, abs=1e-8)
    assert 0 < rho < 1


def test_piecewise_structure():
    r0, rc, cap = (from_bits(v) for v in bsc_rates(DELTA))
    for R in np.linspace(0, rc, 7):
        assert abs(random_coding_exponent(R, U, BSC)[0] - (r0 - R)) <= 1e-9
    for R in np.linspace(rc, cap, 7):
        assert abs(random_coding_exponent(R, U, BSC)[0] - sphere_packing_exponent(R, BSC)) <= 1e-9


def test_random_coding_decreasing():
    cap = mutual_information(U, BSC)
    vals = [random_coding_exponent(R, U, BSC)[0] for R in np.linspace(0.001, cap - 1e-3, 30)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_sphere_packing_bsc():
    cap = mutual_information(U, BSC)
    assert sphere_packing_exponent(cap, BSC) == 0.0
    rc = from_bits(bsc_rates(DELTA)[1])
    assert sphere_packing_exponent(rc, BSC) == pytest.approx(random_coding_exponent(rc, U, BSC)[0], abs=1e-9)
    R = from_bits(0.3)
    gv = float(oracles.inverse_binary_entropy(LOG2 * 0.7))
    assert sphere_packing_bsc(R, DELTA) == pytest.approx(binary_divergence(gv, DELTA), abs=1e-12)


@pytest.mark.parametrize("bits", [0.1, 0.2, 0.35, 0.45])
def test_sphere_packing_generic_matches_closed_form(bits):
    R = from_bits(bits)
    g = sphere_packing_exponent(R, BSC, method="generic")
    assert g == pytest.approx(sphere_packing_bsc(R, DELTA), abs=1e-7)


def test_sphere_packing_asymmetric_channel():
    z = Channel(np.array([[0.95, 0.05], [0.2, 0.8]]))
    R = 0.2
    e = sphere_packing_exponent(R, z)
    best_er = max(random_coding_exponent(R, ProbVector.from_weights([q, 1 - q]), z)[0] for q in np.linspace(0.01, 0.99, 99))
    assert e >= best_er - 1e-9
    with pytest.raises(DomainError):
        sphere_packing_exponent(0.1, Channel(np.array([[0.9, 0.1], [0.5, 0.5], [0.2, 0.8]])))


def test_list_exponent():
    R = from_bits(0.1)
    assert list_exponent(R, 1, U, BSC) == pytest.approx(random_coding_exponent(R, U, BSC)[0], abs=1e-15)
    vals = [list_exponent(R, L, U, BSC) for L in (1, 2, 3, 5)]
    assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))
    oracle = dense_max(lambda r: float(oracles.gallager_E0(r, U.masses, BSC.transition)) - r * R, 0, 2, 1e-4)
    assert vals[1] == pytest.approx(oracle, abs=1e-8)


def test_R_alpha_critical_point():
    a_c = critical_order(DELTA)
    assert to_bits(R_alpha(U, BSC, a_c)) == pytest.approx(0.1731, abs=5e-5)
    assert to_bits(R_alpha_bsc(DELTA, a_c)) == pytest.approx(0.1731, abs=5e-5)


def test_R_alpha_straight_line_branch():
    r0 = bsc_rates(DELTA)[0]
    assert to_bits(R_alpha_bsc(DELTA, 0.3)) == pytest.approx(0.3 * r0, abs=1e-12)
    assert to_bits(R_alpha_bsc(DELTA, 0.3)) == pytest.approx(0.0896, abs=2e-4)


def test_R_alpha_limits():
    cap = mutual_information(U, BSC)
    closer = [cap - R_alpha_bsc(DELTA, a) for a in (0.9, 0.99, 0.999, 0.9999, 1 - 1e-6)]
    assert all(x > y for x, y in zip(closer, closer[1:]))
    assert to_bits(closer[-1]) < 1e-3
    assert R_alpha_bsc(DELTA, 1e-4) < 1e-4
    assert R_alpha(U, BSC, 1e-3) < 1e-3


@pytest.mark.parametrize("a", [0.1, 0.4, 0.5791, 0.7, 0.9])
def test_R_alpha_generic_agrees_with_bsc(a):
    assert R_alpha(U, BSC, a) == pytest.approx(R_alpha_bsc(DELTA, a), abs=1e-9)


def test_R_alpha_crossing_definition():
    a = 0.45
    r = R_alpha(U, BSC, a)
    assert random_coding_exponent(r, U, BSC)[0] == pytest.approx((1 / a - 1) * r, abs=1e-10)


def test_R_alpha_monotone_continuous():
    grid = np.round(np.arange(0.05, 0.951, 0.01), 10)
    vals = np.array([to_bits(R_alpha_bsc(DELTA, float(a))) for a in grid])
    assert np.all(np.diff(vals) > 0)
    assert np.max(np.diff(vals)) < 2e-2


def test_R_alpha_errors():
    with pytest.raises(DomainError):
        R_alpha(U, Channel(np.array([[0.5, 0.5], [0.5, 0.5]])), 0.5)
    with pytest.raises(ValueError):
        R_alpha_bsc(DELTA, 1.0)


def test_feder_merhav():
    R = from_bits(0.25)
    inf_form, star_form = feder_merhav_bound(R, 50, U, BSC)
    assert 0 < inf_form <= star_form
    grid = np.linspace(1e-4, 1, 100000)
    e0 = np.array([gallager_E0(r, U, BSC) for r in grid[::100]])
    coarse = ((1 + 1 / grid[::100]) * np.exp(-50 * (e0 - grid[::100] * R))).min()
    assert inf_form <= coarse + 1e-15
    assert inf_form == pytest.approx(coarse, rel=1e-3)
    small = [feder_merhav_bound(R, n, U, BSC)[0] for n in (10, 100, 1000)]
    assert small[0] > small[1] > small[2]
    with pytest.raises(ValueError):
        feder_merhav_bound(1.0, 10, U, BSC)


def test_exponent_reference():
    R = from_bits(0.1)
    er = random_coding_exponent(R, U, BSC)[0]
    floor1, ceil1 = exponent_reference(R, 1.0, U, BSC)
    assert floor1 == er
    floor5, _ = exponent_reference(R, 0.5, U, BSC)
    assert floor5 == pytest.approx(0.5 * er - 0.5 * R)
    assert ceil1 == pytest.approx(sphere_packing_bsc(R, DELTA))
    assert math.isfinite(ceil1)


def test_sphere_packing_noiseless():
    clean = Channel(np.eye(2))
    assert sphere_packing_exponent(0.3, clean) == math.inf
    assert sphere_packing_exponent(LOG2, clean) == 0.0
    assert sphere_packing_exponent(0.3, Channel.bsc(1.0)) == math.inf
