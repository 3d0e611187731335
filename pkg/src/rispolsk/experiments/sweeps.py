"""Parameter sweeps behind the SNR-vs-mismatch, BER-vs-area and
BER-vs-estimation-error curves."""

from dataclasses import dataclass, replace
import math

import numpy as np

from ..analysis import ber_theoretical, gamma_for_ber, snr_scheme1, snr_scheme2, to_db
from ..linksim import equalize
from .config import Scheme, build_scene
from .montecarlo import estimate_ber, prepare_link

__all__ = [
    "CurvePoint",
    "DEFAULT_BETA_GRID_DEG",
    "DEFAULT_AREA_GRID_M2",
    "DEFAULT_SIGMA_E_GRID_DEG",
    "DEFAULT_AREA_SERIES",
    "series_label",
    "noiseless_target_snr",
    "theory_snr",
    "sweep_snr_vs_beta",
    "sweep_ber_vs_area",
    "sweep_ber_vs_sigma_e",
    "calibrate_area",
]

DEFAULT_BETA_GRID_DEG = [float(b) for b in range(0, 181)]
DEFAULT_AREA_GRID_M2 = [round(0.4 + 0.1 * i, 10) for i in range(9)]
DEFAULT_SIGMA_E_GRID_DEG = [0.0, 4.0, 8.0]
DEFAULT_AREA_SERIES = [
    (Scheme.SCHEME1, 0.0),
    (Scheme.SCHEME2, 0.0),
    (Scheme.SCHEME2, 10.0),
    (Scheme.SCHEME2, 45.0),
    (Scheme.ASK_MATCHED, 10.0),
    (Scheme.ASK_NONCOHERENT, 10.0),
]


@dataclass(frozen=True)
class CurvePoint:
    x: float
    series: str
    y: float
    y_theory: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None


def series_label(scheme, beta_deg=None):
    scheme = Scheme(scheme)
    if scheme is Scheme.SCHEME2 and beta_deg is not None:
        return f"scheme2_beta{beta_deg:g}"
    return scheme.value


def noiseless_target_snr(ctx, b=None):
    """
    Linear SNR at the targeted antenna from the noiseless composite channel,
    after equalization for Scheme 1 and raw for Scheme 2. ``b=None``
    averages the targeted power of both bits.
    """
    bits = (0, 1) if b is None else (b,)
    powers = []
    for bit in bits:
        h = ctx.channel(bit)
        if ctx.config.scheme is Scheme.SCHEME1:
            h = equalize(h, ctx.beta)
        powers.append(abs(h[0 if bit == 1 else 1]) ** 2)
    return float(np.mean(powers)) * ctx.p_t / ctx.noise_power_w


def theory_snr(ctx):
    """Closed-form SNR of the config's scheme, or None for the ASK baselines."""
    args = (ctx.m_count, ctx.eta, ctx.p_t, ctx.noise_power_w)
    if ctx.config.scheme is Scheme.SCHEME1:
        return snr_scheme1(*args)
    if ctx.config.scheme is Scheme.SCHEME2:
        return snr_scheme2(*args, ctx.beta)
    return None


def sweep_snr_vs_beta(config, beta_grid_deg=None):
    """
    Targeted-antenna SNR in dB versus the mismatch angle.

    Series ``scheme1`` carries the noiseless pipeline SNR of Scheme 1 with the
    closed form in ``y_theory``; series ``scheme2`` carries the SNR of the
    rounded element partition with the unrounded closed form in ``y_theory``.
    """
    grid = DEFAULT_BETA_GRID_DEG if beta_grid_deg is None else beta_grid_deg
    base = prepare_link(replace(config, noise_off=False))
    points = []
    for beta_deg in grid:
        for scheme in (Scheme.SCHEME1, Scheme.SCHEME2):
            cfg = replace(config, scheme=scheme, beta_deg=float(beta_deg), noise_off=False)
            ctx = _with_budget(cfg, base)
            points.append(CurvePoint(
                x=float(beta_deg),
                series=scheme.value,
                y=to_db(noiseless_target_snr(ctx)),
                y_theory=to_db(theory_snr(ctx)),
            ))
    return points


def _with_budget(config, base):
    # beta and scheme do not enter the link budget, so reuse it
    return replace(base, config=config, _cache={})


def sweep_ber_vs_area(config, area_grid_m2=None, series=None, threads=1):
    """
    Monte Carlo BER per (area, series). ``series`` is a list of
    ``(scheme, beta_deg)`` pairs; Schemes 1 and 2 also get the closed-form BER.
    """
    grid = DEFAULT_AREA_GRID_M2 if area_grid_m2 is None else area_grid_m2
    series = DEFAULT_AREA_SERIES if series is None else series
    points = []
    for area in grid:
        for scheme, beta_deg in series:
            cfg = replace(config.with_area(float(area)), scheme=Scheme(scheme), beta_deg=float(beta_deg))
            points.append(_ber_point(cfg, float(area), series_label(scheme, beta_deg), threads))
    return points


def sweep_ber_vs_sigma_e(config, sigma_e_grid_deg=None, schemes=(Scheme.SCHEME1, Scheme.SCHEME2),
                         threads=1):
    """Monte Carlo BER versus the std of the mismatch-estimate error, at fixed area and beta."""
    grid = DEFAULT_SIGMA_E_GRID_DEG if sigma_e_grid_deg is None else sigma_e_grid_deg
    points = []
    for sigma_e in grid:
        for scheme in schemes:
            cfg = replace(config, scheme=Scheme(scheme), sigma_e_deg=float(sigma_e))
            points.append(_ber_point(cfg, float(sigma_e), Scheme(scheme).value, threads))
    return points


def _ber_point(cfg, x, label, threads):
    ctx = prepare_link(cfg)
    est = estimate_ber(cfg, threads=threads, ctx=ctx)
    gamma = theory_snr(ctx) if not cfg.noise_off else None
    return CurvePoint(
        x=x,
        series=label,
        y=est.ber,
        y_theory=None if gamma is None else ber_theoretical(gamma),
        ci_low=est.ci_low,
        ci_high=est.ci_high,
    )


def calibrate_area(config, target_ber):
    """
    RIS area at which the closed-form BER of ``config``'s scheme (at its
    ``beta_deg``) equals ``target_ber``.

    The SNR grows with the square of the element count, so the area is
    rescaled from a 1 m^2 reference and then rounded to whole elements.
    """
    if config.scheme not in (Scheme.SCHEME1, Scheme.SCHEME2):
        raise ValueError("no closed form for the ASK baselines")
    ref = prepare_link(replace(config.with_area(1.0), gamma_override_db=None, noise_off=False))
    gamma_ref = theory_snr(ref)
    m_target = ref.m_count * math.sqrt(gamma_for_ber(target_ber) / gamma_ref)
    side2 = build_scene(config.with_area(1.0)).ris.element_area
    return max(1, round(m_target)) * side2
