"""Monte Carlo runs, parameter sweeps, file output and the CLI."""

from .config import ConfigError, Scheme, SimConfig, build_scene, load_config
from .montecarlo import estimate_ber, prepare_link, run_trial
from .stats import BerEstimate, wilson_interval
from .sweeps import (
    CurvePoint,
    calibrate_area,
    sweep_ber_vs_area,
    sweep_ber_vs_sigma_e,
    sweep_snr_vs_beta,
)
from .output import read_csv, write_csv, write_svg
