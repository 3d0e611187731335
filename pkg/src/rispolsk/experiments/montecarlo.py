"""Monte Carlo bit-error estimation.

Trials are grouped in fixed blocks of ``BLOCK_SIZE`` consecutive ids and
block ``k`` draws all of its randomness from ``Rng(master_seed, k)``: first
the AWGN of every trial in the block, then the mismatch-estimate errors.
A trial's outcome therefore depends only on ``(master_seed, trial_id)``,
whatever the number of worker threads. Because noise is drawn before
estimate errors, configs that differ only in ``sigma_e_deg``, the scheme or
``beta_deg`` see identical noise realizations (common random numbers).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np

from .. import linksim
from ..analysis import from_db
from ..riscontrol import ask_profile, scheme1_profile, scheme2_profile
from ..scene import compose_channel_fast, link_budget
from .config import Scheme, build_scene
from .stats import BerEstimate

__all__ = [
    "BLOCK_SIZE",
    "LinkContext",
    "prepare_link",
    "trial_bits",
    "run_trial",
    "estimate_ber",
    "resolve_threads",
]

BLOCK_SIZE = 1 << 16

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _splitmix64(x):
    with np.errstate(over="ignore"):  # modular uint64 arithmetic is intended
        z = np.asarray(x, dtype=np.uint64) + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def trial_bits(master_seed, trial_ids):
    """Transmitted bit of each trial: parity of a seed-keyed hash of its id."""
    key = _splitmix64(np.uint64(master_seed))
    h = _splitmix64(np.asarray(trial_ids, dtype=np.uint64) ^ key)
    return (np.bitwise_count(h) & 1).astype(np.int8)


@dataclass(eq=False)
class LinkContext:
    """
    Per-config quantities shared, read-only, by all trials.

    ``sigma2`` is the noise actually added (zero with ``noise_off``);
    ``noise_power_w`` is the configured noise power used for SNR figures.
    """

    config: object
    budget: object
    p_t: float
    sigma2: float
    noise_power_w: float
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def m_count(self):
        return self.budget.m_count

    @property
    def eta(self):
        return self.budget.eta

    @property
    def beta(self):
        return self.config.beta

    def channel(self, b, beta_hat=None):
        """
        Noiseless composite channel for bit ``b``. Only Scheme 2 depends on
        ``beta_hat`` (the precoder's view of the mismatch); the true mismatch
        always comes from the config.
        """
        scheme = self.config.scheme
        psi = self.budget.psi
        if scheme is Scheme.SCHEME2:
            profile = scheme2_profile(psi, self.beta if beta_hat is None else beta_hat, b)
        elif scheme is Scheme.SCHEME1:
            profile = scheme1_profile(psi, b)
        else:
            profile = ask_profile(psi, b, self.config.ask_delta_phi)
        return compose_channel_fast(profile, self.budget, self.beta)

    def _fixed_channels(self):
        if "fixed" not in self._cache:
            self._cache["fixed"] = np.stack([self.channel(0), self.channel(1)])
        return self._cache["fixed"]

    def _precoded_channels(self, bits, beta_hat):
        m = self.m_count
        c = np.abs(np.cos(beta_hat))
        s = np.abs(np.sin(beta_hat))
        frac = np.where(bits == 1, c, s) / (c + s)
        l_v = np.floor(m * frac + 0.5).astype(np.int64)
        sign = np.where(np.sin(beta_hat) * np.cos(beta_hat) < 0, 1, 0)
        key = (l_v * 2 + sign) * 2 + bits
        uniq, first, inverse = np.unique(key, return_index=True, return_inverse=True)
        table = np.empty((uniq.size, 2), dtype=complex)
        for i, (k, j) in enumerate(zip(uniq, first)):
            cache_key = ("s2", int(k))
            if cache_key not in self._cache:
                self._cache[cache_key] = self.channel(int(bits[j]), float(beta_hat[j]))
            table[i] = self._cache[cache_key]
        return table[inverse.reshape(-1)]

    def detect(self, bits, w, beta_hat):
        """Run the receiver chain for a batch of trials and return the decided bits."""
        bits = np.asarray(bits)
        scheme = self.config.scheme
        if scheme is Scheme.SCHEME2:
            h = self._precoded_channels(bits, beta_hat)
        else:
            h = self._fixed_channels()[bits]
        y = linksim.receive(h, self.p_t, w)
        if scheme is Scheme.SCHEME1:
            return linksim.detect_max_power(linksim.equalize(y, beta_hat))
        if scheme is Scheme.SCHEME2:
            return linksim.detect_max_power(y)
        if scheme is Scheme.ASK_MATCHED:
            stat = linksim.ask_matched_statistic(y, self.config.ask_delta_phi, beta_hat)
        else:
            stat = linksim.ask_noncoherent_statistic(y)
        return linksim.ask_decide(stat, self.m_count, self.eta, self.p_t)


def prepare_link(config):
    """
    Build the scene and link budget for ``config``. With a gamma override
    the geometric amplitude is replaced so that ``M^2 eta^2 p_t / sigma^2``
    equals the requested SNR.
    """
    scene = build_scene(config)
    budget = link_budget(scene)
    p_t = scene.rf.tx_power_w
    noise_power_w = scene.rf.noise_power_w
    if config.gamma_override_db is not None:
        gamma = from_db(config.gamma_override_db)
        budget = budget.with_eta(math.sqrt(gamma * noise_power_w / p_t) / budget.m_count)
    return LinkContext(
        config=config,
        budget=budget,
        p_t=p_t,
        sigma2=0.0 if config.noise_off else noise_power_w,
        noise_power_w=noise_power_w,
    )


def _block_draws(ctx, block):
    rng = linksim.Rng(ctx.config.master_seed, block)
    w = linksim.awgn(rng, ctx.sigma2, size=BLOCK_SIZE)
    beta_hat = linksim.perturb_beta(ctx.beta, ctx.config.sigma_e, rng, size=BLOCK_SIZE)
    return w, beta_hat


def run_trial(config, bit, trial_id, ctx=None):
    """
    One end-to-end transmission of ``bit`` using the randomness reserved
    for ``trial_id``. Returns the detected bit.
    """
    if ctx is None:
        ctx = prepare_link(config)
    block, offset = divmod(int(trial_id), BLOCK_SIZE)
    w, beta_hat = _block_draws(ctx, block)
    out = ctx.detect(np.array([bit]), w[offset:offset + 1], beta_hat[offset:offset + 1])
    return int(out[0])


def resolve_threads(threads):
    if threads in (None, "auto"):
        return os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def _count_block_errors(ctx, block, n_total):
    start = block * BLOCK_SIZE
    count = min(BLOCK_SIZE, n_total - start)
    ids = np.arange(start, start + count, dtype=np.uint64)
    bits = trial_bits(ctx.config.master_seed, ids)
    w, beta_hat = _block_draws(ctx, block)
    decided = ctx.detect(bits, w[:count], beta_hat[:count])
    return int(np.count_nonzero(decided != bits))


def estimate_ber(config, threads=1, ctx=None):
    """Run ``config.trials`` trials and return the error count with a 95% Wilson interval."""
    if ctx is None:
        ctx = prepare_link(config)
    n = int(config.trials)
    blocks = range(math.ceil(n / BLOCK_SIZE))
    workers = resolve_threads(threads)
    if workers == 1 or len(blocks) == 1:
        errors = sum(_count_block_errors(ctx, k, n) for k in blocks)
    else:
        if config.scheme is not Scheme.SCHEME2:
            ctx._fixed_channels()  # fill the cache before workers read it
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = sum(pool.map(lambda k: _count_block_errors(ctx, k, n), blocks))
    return BerEstimate.from_counts(errors, n)
