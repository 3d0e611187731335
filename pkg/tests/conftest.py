import math

import numpy as np
import pytest

from rispolsk.riscontrol import PhaseProfile
from rispolsk.scene import (
    RfParams,
    Scene,
    build_ris_grid,
    dbi_to_linear,
    dbm_to_watts,
    link_budget,
)

_ACCEPTANCE = []


def record_acceptance(number, title, passed, detail=""):
    _ACCEPTANCE.append((number, title, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}  {detail}")


def reference_scene(area_m2=None, m_count=None, beta=0.0):
    fc = 3e9
    if area_m2 is None and m_count is None:
        area_m2 = 1.0
    ris = build_ris_grid(fc, [0, 50, 0], [1, 0, 0], area_m2=area_m2, m_count=m_count)
    rf = RfParams(
        carrier_freq_hz=fc,
        tx_power_w=dbm_to_watts(8),
        noise_power_w=dbm_to_watts(-96),
        gain_tx_lin=dbi_to_linear(3),
        gain_rx_lin=dbi_to_linear(3),
    )
    return Scene(source=[50, 0, 0], receiver=[50, 100, 0], ris=ris, rf=rf, beta=beta)


def skewed_scene(m_count=16):
    """Asymmetric geometry so element phases are not trivially zero."""
    fc = 3e9
    ris = build_ris_grid(fc, [0, 0, 5], [1, 0.2, 0], m_count=m_count)
    rf = RfParams(fc, 1e-2, 1e-13, 2.0, 2.0)
    return Scene(source=[40, -25, 12], receiver=[30, 45, -3], ris=ris, rf=rf)


@pytest.fixture
def ref_scene():
    return reference_scene()


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def random_profile(gen, m, ask_mask=False):
    on = gen.random(m) > 0.2 if ask_mask else np.ones(m, dtype=bool)
    return PhaseProfile(gen.uniform(-math.pi, math.pi, m), gen.uniform(-math.pi, math.pi, m), on)
