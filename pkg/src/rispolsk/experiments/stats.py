"""Bit-error counts and their binomial confidence intervals."""

from dataclasses import dataclass
from math import sqrt
from statistics import NormalDist

__all__ = ["BerEstimate", "wilson_interval", "binomial_sigma"]


def wilson_interval(errors, trials, confidence=0.95):
    """
    Wilson score interval for a binomial proportion.

    Returns ``(low, high)``; with zero errors the upper bound stays
    positive, which is what a zero-error BER point should report.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= errors <= trials:
        raise ValueError("errors must lie in [0, trials]")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    p = errors / trials
    z2n = z * z / trials
    denom = 1.0 + z2n
    center = (p + z2n / 2.0) / denom
    half = z / denom * sqrt(p * (1.0 - p) / trials + z2n / (4.0 * trials))
    low = 0.0 if errors == 0 else max(0.0, center - half)
    high = 1.0 if errors == trials else min(1.0, center + half)
    return low, high


def binomial_sigma(p, n):
    return sqrt(p * (1.0 - p) / n)


@dataclass(frozen=True)
class BerEstimate:
    errors: int
    trials: int
    ber: float
    ci_low: float
    ci_high: float

    @classmethod
    def from_counts(cls, errors, trials, confidence=0.95):
        errors = int(errors)
        trials = int(trials)
        low, high = wilson_interval(errors, trials, confidence)
        return cls(errors, trials, errors / trials, low, high)

    def overlaps(self, other):
        return self.ci_low <= other.ci_high and other.ci_low <= self.ci_high
