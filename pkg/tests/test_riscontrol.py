import math

import numpy as np
import pytest

from rispolsk.analysis import scheme2_channel_powers, snr_scheme2, to_db
from rispolsk.riscontrol import (
    ElementPartition,
    ask_profile,
    partition,
    round_half_away,
    scheme1_profile,
    scheme2_profile,
    tan_sign,
)
from rispolsk.scene import compose_channel_fast, link_budget

from conftest import skewed_scene, reference_scene

DEG_GRID = np.radians(np.arange(0, 181))


@pytest.fixture(scope="module")
def budget400():
    return link_budget(reference_scene(m_count=400))


@pytest.fixture(scope="module")
def budget_skew():
    return link_budget(skewed_scene(64))


def test_scheme1_bits():
    psi = np.array([0.3, -1.2])
    p1 = scheme1_profile(psi, 1)
    np.testing.assert_allclose(p1.phi1, [-0.3, 1.2])
    np.testing.assert_allclose(p1.phi2, [-0.3, 1.2])
    np.testing.assert_allclose(p1.delta_phi, 0)
    np.testing.assert_allclose(scheme1_profile(psi, 0).delta_phi, math.pi)
    assert p1.on.all()
    with pytest.raises(ValueError):
        scheme1_profile(psi, 2)


def test_round_half_away():
    assert [round_half_away(x) for x in (0.5, 1.5, 2.5, -0.5, 2.4999, 340.04)] == [1, 2, 3, -1, 2, 340]


def test_tan_sign():
    assert tan_sign(0.0) == 1
    assert tan_sign(math.radians(10)) == 1
    assert tan_sign(math.radians(100)) == -1
    assert tan_sign(math.radians(190)) == 1


@pytest.mark.parametrize(
    "m, beta_deg, b, l_v",
    [
        (400, 45, 1, 200),
        (400, 0, 1, 400),
        (400, 10, 1, 340),  # round(400 / (1 + tan 10deg)) = round(340.04)
        (400, 0, 0, 0),
        (400, 90, 1, 0),
        (400, 90, 0, 400),
        (7, 0, 1, 7),
    ],
)
def test_partition(m, beta_deg, b, l_v):
    part = partition(m, math.radians(beta_deg), b)
    assert part == ElementPartition(l_v=l_v, l_h=m - l_v)


def test_partition_complementarity():
    m = 400
    for deg in np.arange(0.5, 90, 1.0):
        exact = m / (1 + math.tan(math.radians(deg)))
        if abs(exact - math.floor(exact) - 0.5) < 1e-6:
            continue
        a = partition(m, math.radians(deg), 1).l_v
        b = partition(m, math.radians(90 - deg), 1).l_v
        assert a + b == m


def test_scheme2_beta_zero_full_power(budget400):
    prof = scheme2_profile(budget400.psi, 0.0, 1)
    np.testing.assert_allclose(prof.delta_phi, 0)
    h = compose_channel_fast(prof, budget400, 0.0)
    assert abs(h[0]) ** 2 == pytest.approx((400 * budget400.eta) ** 2, rel=1e-12)


def test_scheme2_45_cancels_offtarget(budget400):
    beta = math.pi / 4
    h = compose_channel_fast(scheme2_profile(budget400.psi, beta, 1), budget400, beta)
    assert abs(h[1]) < 1e-12 * abs(h[0])


def test_scheme2_closed_form_match_10deg(budget400):
    beta = math.radians(10)
    for b in (0, 1):
        h = compose_channel_fast(scheme2_profile(budget400.psi, beta, b), budget400, beta)
        p_v, p_h = scheme2_channel_powers(400, budget400.eta, beta, b)
        target = (abs(h[0]) ** 2, p_v) if b == 1 else (abs(h[1]) ** 2, p_h)
        assert target[0] == pytest.approx(target[1], rel=1e-9)
        off = (abs(h[1]) ** 2, p_h) if b == 1 else (abs(h[0]) ** 2, p_v)
        assert off[0] == pytest.approx(off[1], rel=1e-6, abs=1e-12 * target[1])


def test_scheme2_offtarget_bound_10deg_bit0(budget400):
    beta = math.radians(10)
    h = compose_channel_fast(scheme2_profile(budget400.psi, beta, 0), budget400, beta)
    assert abs(h[0]) <= budget400.eta * (math.cos(beta) + math.sin(beta)) / 2


def test_scheme2_targeted_power_matches_closed_form_everywhere(budget_skew):
    eta, m = budget_skew.eta, budget_skew.m_count
    worst = 0.0
    for beta in DEG_GRID:
        for b in (0, 1):
            h = compose_channel_fast(scheme2_profile(budget_skew.psi, beta, b), budget_skew, beta)
            got = abs(h[0 if b == 1 else 1]) ** 2
            want = scheme2_channel_powers(m, eta, beta, b)[0 if b == 1 else 1]
            worst = max(worst, abs(got - want) / want)
    # coherence of the offset rule: never falls short of the closed form
    assert worst < 1e-9


def test_scheme2_offtarget_residual_bound(budget_skew):
    eta = budget_skew.eta
    for beta in DEG_GRID:
        bound = eta * (abs(math.cos(beta)) + abs(math.sin(beta))) / 2
        for b in (0, 1):
            h = compose_channel_fast(scheme2_profile(budget_skew.psi, beta, b), budget_skew, beta)
            assert abs(h[1 if b == 1 else 0]) <= bound * (1 + 1e-9)


def test_scheme2_snr_close_to_closed_form(budget400):
    eta = budget400.eta
    for beta in np.radians(np.arange(0, 91)):
        for b in (0, 1):
            h = compose_channel_fast(scheme2_profile(budget400.psi, beta, b), budget400, beta)
            got = abs(h[0 if b == 1 else 1]) ** 2
            approx = snr_scheme2(400, eta, 1.0, 1.0, beta)
            assert abs(to_db(got) - to_db(approx)) < 0.1


def test_scheme1_norm_independent_of_beta(budget_skew):
    m, eta = budget_skew.m_count, budget_skew.eta
    for beta in DEG_GRID[::7]:
        for b in (0, 1):
            h = compose_channel_fast(scheme1_profile(budget_skew.psi, b), budget_skew, beta)
            assert np.linalg.norm(h) == pytest.approx(m * eta, rel=1e-10)


def test_ask_profile(budget_skew):
    m, eta = budget_skew.m_count, budget_skew.eta
    off = ask_profile(budget_skew.psi, 0)
    assert not off.on.any()
    np.testing.assert_array_equal(compose_channel_fast(off, budget_skew, 0.3), [0, 0])
    on = compose_channel_fast(ask_profile(budget_skew.psi, 1, 0.0), budget_skew, 0.0)
    np.testing.assert_allclose(on, [m * eta, 0], atol=1e-12 * m * eta)
    for dphi in (0.0, 0.7, math.pi / 2, math.pi, 4.0):
        h = compose_channel_fast(ask_profile(budget_skew.psi, 1, dphi), budget_skew, 1.1)
        assert np.linalg.norm(h) == pytest.approx(m * eta, rel=1e-10)
