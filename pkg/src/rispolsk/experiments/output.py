"""CSV and SVG writers for sweep results."""

import csv
import math

from .sweeps import CurvePoint

__all__ = ["CSV_COLUMNS", "write_csv", "read_csv", "write_svg"]

CSV_COLUMNS = ("x", "series", "y", "y_theory", "ci_low", "ci_high")


def _fmt(value):
    return "" if value is None else repr(float(value))


def write_csv(points, path):
    """Write points with a header row; absent optional fields are left empty."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for p in points:
                writer.writerow([_fmt(p.x), p.series, _fmt(p.y), _fmt(p.y_theory),
                                 _fmt(p.ci_low), _fmt(p.ci_high)])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def read_csv(path):
    def opt(s):
        return float(s) if s != "" else None

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [
            CurvePoint(
                x=float(row["x"]),
                series=row["series"],
                y=float(row["y"]),
                y_theory=opt(row["y_theory"]),
                ci_low=opt(row["ci_low"]),
                ci_high=opt(row["ci_high"]),
            )
            for row in reader
        ]


def write_svg(points, path, log_y=True, xlabel="x", ylabel="y"):
    """
    Line chart of every series (markers) with its closed form, if any,
    dashed. Use ``log_y=True`` for BER curves and ``False`` for SNR in dB.
    Non-positive values are dropped from log-scale plots.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series = {}
    for p in points:
        series.setdefault(p.series, []).append(p)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, pts in series.items():
        pts = sorted(pts, key=lambda p: p.x)
        xs = [p.x for p in pts]
        ys = [p.y if (p.y > 0 or not log_y) else math.nan for p in pts]
        (line,) = ax.plot(xs, ys, marker="o", markersize=3, label=name)
        theory = [p.y_theory for p in pts]
        if any(t is not None for t in theory):
            ax.plot(xs, [math.nan if t is None else t for t in theory], linestyle="--",
                    color=line.get_color(), label=f"{name} (theory)")
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, which="both", alpha=0.3)
    if series:
        ax.legend(fontsize=8)
    fig.tight_layout()
    try:
        fig.savefig(path, format="svg")
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)
