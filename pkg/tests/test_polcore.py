import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rispolsk.polcore import (
    PolKind,
    classify_polarization,
    element_jones,
    jones_power,
    mismatch_matrix,
    wrap_phase,
)

angles = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False)


@pytest.mark.parametrize(
    "beta, expected",
    [
        (0.0, [[1, 0], [0, 1]]),
        (math.pi / 2, [[0, 1], [-1, 0]]),
        (math.pi / 4, [[math.sqrt(2) / 2, math.sqrt(2) / 2], [-math.sqrt(2) / 2, math.sqrt(2) / 2]]),
    ],
)
def test_mismatch_matrix_values(beta, expected):
    np.testing.assert_allclose(mismatch_matrix(beta), expected, atol=1e-15)


def test_mismatch_matrix_batched():
    betas = np.linspace(0, 3, 7)
    out = mismatch_matrix(betas)
    assert out.shape == (7, 2, 2)
    for b, a in zip(betas, out):
        np.testing.assert_array_equal(a, mismatch_matrix(b))


@given(angles)
def test_mismatch_matrix_orthogonal(beta):
    a = mismatch_matrix(beta)
    assert np.linalg.norm(a.T @ a - np.eye(2)) < 1e-12


@given(angles, st.lists(st.floats(-10, 10), min_size=4, max_size=4))
def test_mismatch_matrix_preserves_norm(beta, xs):
    x = np.array([xs[0] + 1j * xs[1], xs[2] + 1j * xs[3]])
    assert abs(np.linalg.norm(mismatch_matrix(beta) @ x) - np.linalg.norm(x)) < 1e-12 * max(1, np.linalg.norm(x))


@given(angles)
def test_mismatch_matrix_periodic(beta):
    np.testing.assert_allclose(mismatch_matrix(beta + 2 * math.pi), mismatch_matrix(beta), atol=1e-12)


@pytest.mark.parametrize(
    "dphi, expected",
    [
        (0.0, [1, 0]),
        (math.pi, [0, 1]),
        (math.pi / 2, [(1 + 1j) / 2, (1 - 1j) / 2]),
    ],
)
def test_element_jones_values(dphi, expected):
    np.testing.assert_allclose(element_jones(dphi), expected, atol=1e-15)


def test_element_jones_unit_power_random():
    dphi = np.random.default_rng(0).uniform(-50, 50, 1000)
    np.testing.assert_allclose(jones_power(element_jones(dphi)), 1.0, atol=1e-12)


@given(angles)
def test_element_jones_conjugate_mirror(dphi):
    np.testing.assert_allclose(element_jones(-dphi), np.conj(element_jones(dphi)), atol=1e-12)


@pytest.mark.parametrize(
    "dphi, kind",
    [
        (0.0, PolKind.VERTICAL),
        (2 * math.pi, PolKind.VERTICAL),
        (math.pi, PolKind.HORIZONTAL),
        (-math.pi, PolKind.HORIZONTAL),
        (math.pi / 2, PolKind.RIGHT_CIRCULAR),
        (-math.pi / 2, PolKind.LEFT_CIRCULAR),
        (3 * math.pi / 2, PolKind.LEFT_CIRCULAR),
        (math.pi / 4, PolKind.ELLIPTICAL),
        (1e-6, PolKind.ELLIPTICAL),
    ],
)
def test_classify_polarization(dphi, kind):
    assert classify_polarization(dphi) is kind


def test_classify_tolerance():
    assert classify_polarization(1e-6, tol=1e-5) is PolKind.VERTICAL
    with pytest.raises(ValueError):
        classify_polarization(0.0, tol=0.0)


@given(angles)
def test_wrap_phase_range(x):
    w = wrap_phase(x)
    assert -math.pi < w <= math.pi
    assert abs(math.remainder(w - x, 2 * math.pi)) < 1e-9
