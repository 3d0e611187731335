"""Geometry, plate-scattering link budget and composite channel synthesis.

All positions are in meters in a global frame whose z axis is vertical.
The RIS carries its own local frame: x along the surface normal, z along
the (in-plane) vertical, y completing a right-handed triad.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .polcore import mismatch_matrix

__all__ = [
    "SPEED_OF_LIGHT",
    "PLATE_EXPONENT",
    "GeometryError",
    "InvalidAreaError",
    "RfParams",
    "RisLayout",
    "Scene",
    "Geometry",
    "LinkBudget",
    "dbm_to_watts",
    "dbi_to_linear",
    "ris_frame",
    "build_ris_grid",
    "geometry_angles",
    "path_loss_eta",
    "wave_vector",
    "element_phase",
    "link_budget",
    "reflected_wave",
    "compose_channel_fast",
    "compose_channel_bruteforce",
]

SPEED_OF_LIGHT = 299_792_458.0
# radiation-pattern exponent of a square half-wavelength plate
PLATE_EXPONENT = 0.285


class GeometryError(ValueError):
    """Raised when a source or receiver is not in front of the RIS."""


class InvalidAreaError(ValueError):
    """Raised when an RIS area rounds down to zero elements."""


def dbm_to_watts(p_dbm):
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def dbi_to_linear(g_dbi):
    return 10.0 ** (g_dbi / 10.0)


def _vec3(x, name):
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be a finite 3-vector, got {x!r}")
    return v


@dataclass(frozen=True)
class RfParams:
    """Radio parameters in SI units (linear gains, watts)."""

    carrier_freq_hz: float
    tx_power_w: float
    noise_power_w: float
    gain_tx_lin: float = 1.0
    gain_rx_lin: float = 1.0

    def __post_init__(self):
        for name in ("carrier_freq_hz", "tx_power_w", "noise_power_w", "gain_tx_lin", "gain_rx_lin"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def wavelength(self):
        return SPEED_OF_LIGHT / self.carrier_freq_hz


@dataclass(frozen=True, eq=False)
class RisLayout:
    """
    Element positions of a planar RIS.

    Attributes
    ----------
    m_count : int
        Number of reflecting elements.
    element_side_m : float
        Side of one square element; its area is ``element_side_m ** 2``.
    element_coords : numpy.ndarray
        Global element centers, shape ``(m_count, 3)``.
    center, normal : numpy.ndarray
        Surface center and unit normal.
    """

    m_count: int
    element_side_m: float
    element_coords: np.ndarray
    center: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        if self.m_count < 1:
            raise ValueError("RIS needs at least one element")
        if self.element_coords.shape != (self.m_count, 3):
            raise ValueError(
                f"element_coords has shape {self.element_coords.shape}, expected ({self.m_count}, 3)"
            )
        if not self.element_side_m > 0:
            raise ValueError("element_side_m must be > 0")

    @property
    def element_area(self):
        return self.element_side_m ** 2

    @property
    def area(self):
        return self.m_count * self.element_area

    def local_coords(self):
        """Element centers expressed in the RIS frame, relative to ``center``."""
        return (self.element_coords - self.center) @ ris_frame(self.normal).T


@dataclass(frozen=True, eq=False)
class Scene:
    source: np.ndarray
    receiver: np.ndarray
    ris: RisLayout
    rf: RfParams
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "source", _vec3(self.source, "source"))
        object.__setattr__(self, "receiver", _vec3(self.receiver, "receiver"))
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")
        for name in ("source", "receiver"):
            if np.allclose(getattr(self, name), self.ris.center):
                raise GeometryError(f"{name} coincides with the RIS center")


@dataclass(frozen=True)
class Geometry:
    """Distances and angles of the two hops, seen from the RIS center."""

    r1: float
    r2: float
    zeta1: float
    zeta2: float
    aoa: tuple  # (elevation, azimuth) toward the source, RIS frame
    aod: tuple  # (elevation, azimuth) toward the receiver, RIS frame


@dataclass(frozen=True, eq=False)
class LinkBudget:
    """
    Everything the channel synthesis needs about the two hops.

    ``mu1`` and ``mu2`` are the per-element phases of the incident and
    reflected plane waves; ``psi`` is their sum.
    """

    eta: float
    mu1: np.ndarray
    mu2: np.ndarray
    geometry: Geometry

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError("eta must be > 0")

    @property
    def psi(self):
        return self.mu1 + self.mu2

    @property
    def m_count(self):
        return self.mu1.shape[0]

    def with_eta(self, eta):
        """Copy with a different effective amplitude (used for SNR calibration)."""
        return LinkBudget(eta=float(eta), mu1=self.mu1, mu2=self.mu2, geometry=self.geometry)


def ris_frame(normal):
    """
    Rows are the RIS frame axes (x=normal, y, z=vertical) in global coordinates.
    """
    x = _vec3(normal, "normal")
    x = x / np.linalg.norm(x)
    up = np.array([0.0, 0.0, 1.0])
    z = up - np.dot(up, x) * x
    nz = np.linalg.norm(z)
    if nz < 1e-9:
        raise GeometryError("RIS normal must not be vertical")
    z = z / nz
    y = np.cross(z, x)
    return np.vstack([x, y, z])


def build_ris_grid(carrier_freq_hz, center, normal, *, area_m2=None, m_count=None,
                   element_side_m=None):
    """
    Lay out a square-ish grid of abutting elements around ``center``.

    Exactly one of ``area_m2`` and ``m_count`` must be given. The element
    side defaults to half a carrier wavelength and doubles as the grid pitch.
    Columns run along the in-plane horizontal, rows along the vertical; the
    grid is filled row by row and stops at ``m_count`` elements, then shifted
    so the element centroid sits on ``center``.
    """
    if (area_m2 is None) == (m_count is None):
        raise ValueError("give exactly one of area_m2 and m_count")
    side = SPEED_OF_LIGHT / carrier_freq_hz / 2.0 if element_side_m is None else float(element_side_m)
    if not side > 0:
        raise ValueError("element side must be > 0")
    if area_m2 is not None:
        if not area_m2 >= 0:
            raise InvalidAreaError(f"RIS area must be non-negative, got {area_m2!r}")
        m_count = int(math.floor(area_m2 / side ** 2 + 0.5))
        if m_count == 0:
            raise InvalidAreaError(f"RIS area {area_m2} m^2 holds no {side:.4g} m elements")
    m_count = int(m_count)
    if m_count < 1:
        raise InvalidAreaError(f"m_count must be >= 1, got {m_count}")

    center = _vec3(center, "center")
    frame = ris_frame(normal)
    cols = math.ceil(math.sqrt(m_count))
    idx = np.arange(m_count)
    local = np.zeros((m_count, 3))
    local[:, 1] = (idx % cols) * side
    local[:, 2] = (idx // cols) * side
    local -= local.mean(axis=0)
    coords = center + local @ frame
    return RisLayout(
        m_count=m_count,
        element_side_m=side,
        element_coords=coords,
        center=center,
        normal=frame[0],
    )


def _direction_angles(vec, frame):
    d = frame @ (vec / np.linalg.norm(vec))
    zeta = math.acos(float(np.clip(d[0], -1.0, 1.0)))
    theta = math.asin(float(np.clip(d[2], -1.0, 1.0)))
    phi = math.atan2(d[1], d[0])
    return zeta, (theta, phi)


def geometry_angles(scene):
    """
    Hop distances, incidence/departure angles against the normal, and the
    RIS-frame elevation/azimuth of the source and receiver directions.

    Raises
    ------
    GeometryError
        If either terminal is on or behind the RIS plane.
    """
    frame = ris_frame(scene.ris.normal)
    to_src = scene.source - scene.ris.center
    to_rx = scene.receiver - scene.ris.center
    zeta1, aoa = _direction_angles(to_src, frame)
    zeta2, aod = _direction_angles(to_rx, frame)
    for name, zeta in (("source", zeta1), ("receiver", zeta2)):
        if zeta >= math.pi / 2:
            raise GeometryError(
                f"{name} is not in front of the RIS (angle to normal {math.degrees(zeta):.3f} deg)"
            )
    return Geometry(
        r1=float(np.linalg.norm(to_src)),
        r2=float(np.linalg.norm(to_rx)),
        zeta1=zeta1,
        zeta2=zeta2,
        aoa=aoa,
        aod=aod,
    )


def path_loss_eta(scene, geom):
    """Plate-scattering amplitude gain of the two-hop link through one element."""
    rf = scene.rf
    spread = scene.ris.element_area * math.sqrt(rf.gain_tx_lin * rf.gain_rx_lin) / (
        4.0 * math.pi * geom.r1 * geom.r2
    )
    return spread * (math.cos(geom.zeta1) * math.cos(geom.zeta2)) ** PLATE_EXPONENT


def wave_vector(theta, phi, carrier_freq_hz):
    """Plane-wave vector (rad/m) for elevation ``theta`` and azimuth ``phi``."""
    k = 2.0 * math.pi * carrier_freq_hz / SPEED_OF_LIGHT
    return k * np.array([
        math.cos(phi) * math.cos(theta),
        math.sin(phi) * math.cos(theta),
        math.sin(theta),
    ])


def element_phase(g, q):
    """Plane-wave phase ``g . q`` at element position(s) ``g`` (RIS frame)."""
    return np.asarray(g, dtype=float) @ np.asarray(q, dtype=float)


def link_budget(scene):
    geom = geometry_angles(scene)
    fc = scene.rf.carrier_freq_hz
    g = scene.ris.local_coords()
    mu1 = element_phase(g, wave_vector(*geom.aoa, fc))
    mu2 = element_phase(g, wave_vector(*geom.aod, fc))
    return LinkBudget(eta=path_loss_eta(scene, geom), mu1=mu1, mu2=mu2, geometry=geom)


def _check_lengths(profile, budget):
    if len(profile.phi1) != budget.m_count:
        raise ValueError(
            f"profile has {len(profile.phi1)} elements but the RIS has {budget.m_count}"
        )


def reflected_wave(profile, budget):
    """
    Composite field reflected by the whole surface, before the receiver
    mismatch rotation. Elements flagged off contribute nothing.
    """
    _check_lengths(profile, budget)
    phi1 = np.asarray(profile.phi1, dtype=float)
    dphi = np.asarray(profile.phi2, dtype=float) - phi1
    weight = np.asarray(profile.on, dtype=float) * np.exp(1j * (budget.psi + phi1))
    e = np.exp(1j * dphi)
    return 0.5 * budget.eta * np.array([np.sum(weight * (1.0 + e)), np.sum(weight * (1.0 - e))])


def compose_channel_fast(profile, budget, beta):
    """Composite source-to-receiver channel ``[h_V, h_H]`` via the rotated reflected wave."""
    return mismatch_matrix(beta) @ reflected_wave(profile, budget)


def compose_channel_bruteforce(profile, budget, beta):
    """
    Same channel as :func:`compose_channel_fast`, summed element by element
    from the first-hop vector, the diagonal phase matrix and the slant-basis
    second-hop matrix.
    """
    _check_lengths(profile, budget)
    rho1 = rho2 = math.sqrt(budget.eta)
    alpha = math.pi / 4 - beta
    pol = np.array([[math.cos(alpha), math.sin(alpha)],
                    [math.sin(alpha), -math.cos(alpha)]])
    h = np.zeros(2, dtype=complex)
    for m in range(budget.m_count):
        if not profile.on[m]:
            continue
        h1 = rho1 / math.sqrt(2.0) * np.exp(1j * budget.mu1[m]) * np.array([1.0, 1.0])
        phase = np.diag([np.exp(1j * profile.phi1[m]), np.exp(1j * profile.phi2[m])])
        h2 = rho2 * np.exp(1j * budget.mu2[m]) * pol
        h += h2 @ (phase @ h1)
    return h
