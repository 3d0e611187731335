"""Two-component polarization algebra.

Jones vectors are plain complex numpy arrays whose last axis has length 2
and holds the (vertical, horizontal) components. Matrices are ``(..., 2, 2)``
arrays, so every function here broadcasts over leading batch axes.
"""

import enum

import numpy as np

__all__ = [
    "PolKind",
    "mismatch_matrix",
    "element_jones",
    "wrap_phase",
    "classify_polarization",
    "jones_power",
]


class PolKind(enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    RIGHT_CIRCULAR = "right_circular"
    LEFT_CIRCULAR = "left_circular"
    ELLIPTICAL = "elliptical"


def mismatch_matrix(beta):
    """
    Rotation matrix mapping the reflected V/H basis onto the receiver's.

    Parameters
    ----------
    beta : float or array_like
        Azimuth mismatch angle in radians.

    Returns
    -------
    numpy.ndarray
        Real array of shape ``np.shape(beta) + (2, 2)`` equal to
        ``[[cos b, sin b], [-sin b, cos b]]``.
    """
    beta = np.asarray(beta, dtype=float)
    c = np.cos(beta)
    s = np.sin(beta)
    out = np.empty(beta.shape + (2, 2))
    out[..., 0, 0] = c
    out[..., 0, 1] = s
    out[..., 1, 0] = -s
    out[..., 1, 1] = c
    return out


def element_jones(delta_phi):
    """
    Normalized field reflected by one element for a phase difference ``delta_phi``.

    Returns ``0.5 * [1 + e^{j dphi}, 1 - e^{j dphi}]``, which always has unit
    power: 0 gives vertical, pi horizontal, +-pi/2 circular.
    """
    e = np.exp(1j * np.asarray(delta_phi, dtype=float))
    return 0.5 * np.stack([1.0 + e, 1.0 - e], axis=-1)


def wrap_phase(x):
    """Map angles into the half-open interval (-pi, pi]."""
    x = np.asarray(x, dtype=float)
    wrapped = np.pi - np.mod(np.pi - x, 2.0 * np.pi)
    if wrapped.ndim == 0:
        return float(wrapped)
    return wrapped


def classify_polarization(delta_phi, tol=1e-9):
    """
    Name the polarization state produced by a per-element phase difference.

    Parameters
    ----------
    delta_phi : float
        Phase difference between the two excited slant states, radians.
    tol : float
        Angular tolerance for matching the canonical states.

    Returns
    -------
    PolKind
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    d = wrap_phase(float(delta_phi))
    targets = (
        (0.0, PolKind.VERTICAL),
        (np.pi, PolKind.HORIZONTAL),
        (np.pi / 2, PolKind.RIGHT_CIRCULAR),
        (-np.pi / 2, PolKind.LEFT_CIRCULAR),
    )
    for angle, kind in targets:
        # distance on the circle, so -pi+eps still matches pi
        if abs(wrap_phase(d - angle)) <= tol:
            return kind
    return PolKind.ELLIPTICAL


def jones_power(v):
    """Squared norm ``|v_V|^2 + |v_H|^2`` along the last axis."""
    v = np.asarray(v)
    return np.sum(np.abs(v) ** 2, axis=-1)
