"""Per-element phase profiles that encode one bit on the RIS.

Bit 1 is carried by vertical polarization, bit 0 by horizontal.
"""

from dataclasses import dataclass
import math

import numpy as np

__all__ = [
    "PhaseProfile",
    "ElementPartition",
    "round_half_away",
    "tan_sign",
    "partition",
    "scheme1_profile",
    "scheme2_profile",
    "ask_profile",
]


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """
    Phase shifts applied to the slant +45 (``phi1``) and slant -45
    (``phi2``) states of every element, plus an on/off mask.
    """

    phi1: np.ndarray
    phi2: np.ndarray
    on: np.ndarray

    def __post_init__(self):
        phi1 = np.asarray(self.phi1, dtype=float)
        phi2 = np.asarray(self.phi2, dtype=float)
        on = np.asarray(self.on, dtype=bool)
        if not (phi1.shape == phi2.shape == on.shape) or phi1.ndim != 1:
            raise ValueError("phi1, phi2 and on must be 1-D arrays of equal length")
        object.__setattr__(self, "phi1", phi1)
        object.__setattr__(self, "phi2", phi2)
        object.__setattr__(self, "on", on)

    def __len__(self):
        return self.phi1.shape[0]

    @property
    def delta_phi(self):
        return self.phi2 - self.phi1


@dataclass(frozen=True)
class ElementPartition:
    l_v: int
    l_h: int


def round_half_away(x):
    """Round to the nearest integer, ties away from zero."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def tan_sign(beta):
    """Sign of ``tan(beta)`` with sign(0) taken as +1; never evaluates tan."""
    return -1 if math.sin(beta) * math.cos(beta) < 0 else 1


def _check_bit(b):
    if b not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {b!r}")


def partition(m_count, beta, b):
    """
    Split ``m_count`` elements into vertically and horizontally exciting sets
    so the off-target receive antenna sees (almost) no signal.

    ``M / (1 + |tan b|)`` is evaluated as ``M |cos| / (|cos| + |sin|)`` (and
    the cotangent case likewise), which gives the analytic limits at the poles.
    """
    if m_count < 1:
        raise ValueError("m_count must be >= 1")
    _check_bit(b)
    c = abs(math.cos(beta))
    s = abs(math.sin(beta))
    frac = c / (c + s) if b == 1 else s / (c + s)
    l_v = round_half_away(m_count * frac)
    return ElementPartition(l_v=l_v, l_h=m_count - l_v)


def scheme1_profile(psi, b):
    """Co-phase all elements and reflect V (bit 1) or H (bit 0)."""
    _check_bit(b)
    phi1 = -np.asarray(psi, dtype=float)
    phi2 = phi1 + math.pi * (1 - b)
    return PhaseProfile(phi1=phi1, phi2=phi2, on=np.ones(phi1.shape, dtype=bool))


def scheme2_profile(psi, beta_hat, b):
    """
    Precode against the mismatch ``beta_hat``: the first ``l_v`` elements
    reflect V with a bit- and sign-dependent offset, the rest reflect H.
    """
    _check_bit(b)
    psi = np.asarray(psi, dtype=float)
    part = partition(psi.shape[0], beta_hat, b)
    offset = 0.5 * math.pi * (1 + (-1) ** b * tan_sign(beta_hat))
    phi1 = -psi.copy()
    phi1[: part.l_v] += offset
    dphi = np.full(psi.shape, math.pi)
    dphi[: part.l_v] = 0.0
    return PhaseProfile(phi1=phi1, phi2=phi1 + dphi, on=np.ones(psi.shape, dtype=bool))


def ask_profile(psi, b, delta_phi_common=0.0):
    """On/off keying baseline: everything off for 0, co-phased and on for 1."""
    _check_bit(b)
    phi1 = -np.asarray(psi, dtype=float)
    return PhaseProfile(
        phi1=phi1,
        phi2=phi1 + delta_phi_common,
        on=np.full(phi1.shape, b == 1),
    )
