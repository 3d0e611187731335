"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 geometry error, 4 I/O error.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import replace

from ..scene import GeometryError, InvalidAreaError
from .config import ConfigError, Scheme, SimConfig, load_config
from .montecarlo import estimate_ber, prepare_link, resolve_threads
from .output import write_csv, write_svg
from .sweeps import (
    CurvePoint,
    series_label,
    sweep_ber_vs_area,
    sweep_ber_vs_sigma_e,
    sweep_snr_vs_beta,
    theory_snr,
)
from ..analysis import ber_theoretical

log = logging.getLogger("rispolsk")

EXIT_OK, EXIT_CONFIG, EXIT_GEOMETRY, EXIT_IO = 0, 2, 3, 4


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (SimConfig keys, optional 'sweep' object)")
    common.add_argument("--seed", type=int, help="master seed (overrides the config)")
    common.add_argument("--trials", type=int, help="trials per point (overrides the config)")
    common.add_argument("--out", default=".", help="output directory (default: current)")
    common.add_argument("--format", choices=("csv", "svg", "both"), default="csv")
    common.add_argument("--threads", default="1", help="worker threads, integer or 'auto'")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="rispolsk",
        description="Polarization shift keying through a dual-polarized RIS: SNR and BER sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("snr-sweep", parents=[common], help="targeted-antenna SNR versus mismatch angle")
    sub.add_parser("ber-area-sweep", parents=[common], help="BER versus RIS surface area")
    sub.add_parser("mismatch-error-sweep", parents=[common],
                   help="BER versus std of the mismatch-angle estimation error")
    sub.add_parser("single-point", parents=[common], help="BER of the configured point")
    return parser


def _load(args):
    overrides = {"master_seed": args.seed, "trials": args.trials}
    if args.config:
        return load_config(args.config, **overrides)
    data = {k: v for k, v in overrides.items() if v is not None}
    return SimConfig.from_dict(data), {}


def _parse_series(raw):
    try:
        return [(Scheme(s), float(b)) for s, b in raw]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad sweep.series entry: {exc}") from None


def _emit(points, args, stem, log_y, xlabel, ylabel):
    os.makedirs(args.out, exist_ok=True)
    written = []
    if args.format in ("csv", "both"):
        path = os.path.join(args.out, stem + ".csv")
        write_csv(points, path)
        written.append(path)
    if args.format in ("svg", "both"):
        path = os.path.join(args.out, stem + ".svg")
        write_svg(points, path, log_y=log_y, xlabel=xlabel, ylabel=ylabel)
        written.append(path)
    for path in written:
        print(path)


def _run(args):
    config, sweep = _load(args)
    threads = resolve_threads(args.threads)
    if args.command == "snr-sweep":
        points = sweep_snr_vs_beta(config, sweep.get("beta_grid_deg"))
        _emit(points, args, "snr_vs_beta", False, "mismatch angle (deg)", "SNR (dB)")
    elif args.command == "ber-area-sweep":
        series = _parse_series(sweep["series"]) if "series" in sweep else None
        points = sweep_ber_vs_area(config, sweep.get("area_grid_m2"), series, threads=threads)
        _emit(points, args, "ber_vs_area", True, "RIS area (m^2)", "BER")
    elif args.command == "mismatch-error-sweep":
        schemes = [Scheme(s) for s in sweep.get("schemes", ["scheme1", "scheme2"])]
        points = sweep_ber_vs_sigma_e(config, sweep.get("sigma_e_grid_deg"), schemes, threads=threads)
        _emit(points, args, "ber_vs_sigma_e", True, "estimation error std (deg)", "BER")
    else:
        ctx = prepare_link(config)
        est = estimate_ber(config, threads=threads, ctx=ctx)
        gamma = theory_snr(ctx)
        summary = {
            "scheme": config.scheme.value,
            "beta_deg": config.beta_deg,
            "m_count": ctx.m_count,
            "errors": est.errors,
            "trials": est.trials,
            "ber": est.ber,
            "ci_low": est.ci_low,
            "ci_high": est.ci_high,
            "ber_theory": None if gamma is None else ber_theoretical(gamma),
        }
        print(json.dumps(summary))
        x = config.area_m2 if config.area_m2 is not None else float(config.m_count)
        point = CurvePoint(x=x, series=series_label(config.scheme, config.beta_deg), y=est.ber,
                           y_theory=summary["ber_theory"], ci_low=est.ci_low, ci_high=est.ci_high)
        _emit([point], args, "single_point", True, "RIS area (m^2)", "BER")


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        _run(args)
    except (GeometryError, InvalidAreaError) as exc:
        log.error("geometry error: %s", exc)
        return EXIT_GEOMETRY
    except (ConfigError, ValueError, KeyError) as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
