"""Transmit/receive chain: noise, reception, equalization and detectors.

Signal arrays follow the polcore convention (last axis = V, H), and every
function accepts a leading batch axis so a block of trials runs at once.
"""

import math

import numpy as np

from .polcore import mismatch_matrix

__all__ = [
    "Rng",
    "awgn",
    "receive",
    "equalize",
    "detect_max_power",
    "perturb_beta",
    "ask_reference",
    "ask_matched_statistic",
    "ask_noncoherent_statistic",
    "ask_decide",
]


class Rng:
    """
    Deterministic random stream keyed by ``(master_seed, stream_id)``.

    Uniforms come from numpy's counter-based Philox generator; normals are
    produced from them with the Box-Muller transform.
    """

    def __init__(self, master_seed, stream_id=0):
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        seq = np.random.SeedSequence([self.master_seed, self.stream_id])
        self._gen = np.random.Generator(np.random.Philox(seq))

    def uniform(self, size=None):
        return self._gen.random(size)

    def standard_normal(self, size=None):
        n = 1 if size is None else int(np.prod(size))
        pairs = (n + 1) // 2
        u = self._gen.random((2, pairs))
        radius = np.sqrt(-2.0 * np.log1p(-u[0]))  # 1-u lies in (0, 1]
        angle = 2.0 * np.pi * u[1]
        z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:n]
        if size is None:
            return float(z[0])
        return z.reshape(size)


def awgn(rng, sigma2, size=None):
    """
    Circular complex Gaussian noise on both antennas.

    ``sigma2`` is the total variance of each complex sample (half per
    quadrature). Draws are consumed even when ``sigma2`` is zero, so the
    stream position does not depend on the noise level.
    """
    if sigma2 < 0:
        raise ValueError("noise variance must be >= 0")
    shape = (2,) if size is None else (int(size), 2)
    z = rng.standard_normal(shape + (2,))
    return math.sqrt(sigma2 / 2.0) * (z[..., 0] + 1j * z[..., 1])


def receive(h, p_t, w):
    return math.sqrt(p_t) * np.asarray(h) + np.asarray(w)


def equalize(y, beta_hat):
    """Undo the receiver mismatch rotation: ``A(beta_hat)^T y``."""
    a = mismatch_matrix(beta_hat)
    return np.einsum("...ji,...j->...i", a, np.asarray(y))


def detect_max_power(s):
    """1 where ``|s_V| >= |s_H|``, else 0."""
    s = np.asarray(s)
    out = (np.abs(s[..., 0]) >= np.abs(s[..., 1])).astype(np.int8)
    return int(out) if out.ndim == 0 else out


def perturb_beta(beta, sigma_e, rng, size=None):
    """Estimate of ``beta`` with zero-mean Gaussian error of std ``sigma_e``."""
    if sigma_e < 0:
        raise ValueError("sigma_e must be >= 0")
    return beta + sigma_e * rng.standard_normal(size)


def ask_reference(delta_phi, beta_hat):
    """Unnormalized matched-filter template ``A [1+e^{jd}, 1-e^{jd}]`` (norm 2)."""
    e = np.exp(1j * delta_phi)
    return np.einsum("...ij,j->...i", mismatch_matrix(beta_hat), np.array([1.0 + e, 1.0 - e]))


def ask_matched_statistic(y, delta_phi, beta_hat):
    ref = ask_reference(delta_phi, beta_hat)
    return np.abs(np.sum(np.conj(ref) * np.asarray(y), axis=-1)) / 2.0


def ask_noncoherent_statistic(y):
    return np.sqrt(np.sum(np.abs(np.asarray(y)) ** 2, axis=-1))


def ask_decide(stat, m_count, eta, p_t):
    threshold = 0.5 * m_count * eta * math.sqrt(p_t)
    out = (np.asarray(stat) >= threshold).astype(np.int8)
    return int(out) if out.ndim == 0 else out
