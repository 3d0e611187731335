"""Closed-form SNR and BER of the two polarization keying schemes."""

import math

import numpy as np

from .riscontrol import partition

__all__ = [
    "snr_scheme1",
    "snr_scheme2",
    "scheme2_channel_powers",
    "snr_scheme2_exact",
    "ber_theoretical",
    "gamma_for_ber",
    "to_db",
    "from_db",
]


def snr_scheme1(m_count, eta, p_t, sigma2):
    """Receive SNR with equalization at the receiver; independent of the mismatch."""
    if not sigma2 > 0:
        raise ValueError("sigma2 must be > 0")
    return m_count ** 2 * eta ** 2 * p_t / sigma2


def snr_scheme2(m_count, eta, p_t, sigma2, beta):
    """Receive SNR with RIS-side precoding, ignoring the partition rounding."""
    return snr_scheme1(m_count, eta, p_t, sigma2) / (1.0 + abs(math.sin(2.0 * beta)))


def scheme2_channel_powers(m_count, eta, beta, b):
    """
    Noiseless ``(|h_V|^2, |h_H|^2)`` of the precoded channel, with the
    element partition rounded to integers.

    The cosine factor is folded into the bracket so nothing diverges at
    ``beta = 90 deg``.
    """
    part = partition(m_count, beta, b)
    c = abs(math.cos(beta))
    s = abs(math.sin(beta))
    sgn = (-1) ** b
    p_v = eta ** 2 * (part.l_v * c - sgn * part.l_h * s) ** 2
    p_h = eta ** 2 * (part.l_h * c + sgn * part.l_v * s) ** 2
    return p_v, p_h


def snr_scheme2_exact(m_count, eta, p_t, sigma2, beta, b=None):
    """
    Targeted-antenna SNR using the rounded partition. With ``b=None`` the
    targeted powers of both bits are averaged.
    """
    if not sigma2 > 0:
        raise ValueError("sigma2 must be > 0")
    bits = (0, 1) if b is None else (b,)
    target = [scheme2_channel_powers(m_count, eta, beta, bit)[0 if bit == 1 else 1] for bit in bits]
    return float(np.mean(target)) * p_t / sigma2


def ber_theoretical(gamma):
    """Non-coherent orthogonal signalling BER, ``exp(-gamma/2) / 2``."""
    out = 0.5 * np.exp(-0.5 * np.asarray(gamma, dtype=float))
    return float(out) if out.ndim == 0 else out


def gamma_for_ber(ber):
    """SNR at which :func:`ber_theoretical` equals ``ber``."""
    if not 0 < ber <= 0.5:
        raise ValueError("ber must lie in (0, 0.5]")
    return 2.0 * math.log(0.5 / ber)


def to_db(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("to_db needs strictly positive input")
    out = 10.0 * np.log10(x)
    return float(out) if out.ndim == 0 else out


def from_db(x):
    out = 10.0 ** (np.asarray(x, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out
