"""Simulation configuration and its JSON file form.

Values at this boundary use degrees and dBm/dBi; :func:`build_scene`
converts them to the SI units used everywhere else.
"""

from dataclasses import asdict, dataclass, field, fields, replace
import enum
import json
import math

from ..scene import RfParams, Scene, build_ris_grid, dbi_to_linear, dbm_to_watts

__all__ = ["ConfigError", "Scheme", "SimConfig", "build_scene", "load_config", "save_config"]


class ConfigError(ValueError):
    """Invalid or unreadable simulation configuration."""


class Scheme(enum.Enum):
    SCHEME1 = "scheme1"
    SCHEME2 = "scheme2"
    ASK_MATCHED = "ask_matched"
    ASK_NONCOHERENT = "ask_noncoherent"


def _reference_position(*xyz):
    return field(default_factory=lambda: list(xyz))


@dataclass(frozen=True)
class SimConfig:
    """
    One simulation point. Defaults reproduce the reference scenario:
    3 GHz carrier, 3 dBi antennas, 8 dBm transmit power, -96 dBm noise,
    source at (50, 0, 0), receiver at (50, 100, 0), RIS at (0, 50, 0) facing +x.

    ``gamma_override_db`` fixes ``(M eta sqrt(p_t) / sigma)^2`` directly and
    keeps the geometry only for element phases. ``noise_off`` removes AWGN.
    """

    source_m: list = _reference_position(50.0, 0.0, 0.0)
    receiver_m: list = _reference_position(50.0, 100.0, 0.0)
    ris_center_m: list = _reference_position(0.0, 50.0, 0.0)
    ris_normal: list = _reference_position(1.0, 0.0, 0.0)
    carrier_freq_hz: float = 3e9
    gain_tx_dbi: float = 3.0
    gain_rx_dbi: float = 3.0
    tx_power_dbm: float = 8.0
    noise_power_dbm: float = -96.0
    element_side_m: float | None = None
    scheme: Scheme = Scheme.SCHEME1
    beta_deg: float = 0.0
    sigma_e_deg: float = 0.0
    area_m2: float | None = 1.0
    m_count: int | None = None
    trials: int = 1_000_000
    master_seed: int = 1
    gamma_override_db: float | None = None
    ask_delta_phi_deg: float = 0.0
    noise_off: bool = False

    def __post_init__(self):
        scheme = self.scheme
        if not isinstance(scheme, Scheme):
            try:
                scheme = Scheme(scheme)
            except ValueError:
                raise ConfigError(
                    f"unknown scheme {scheme!r}; expected one of {[s.value for s in Scheme]}"
                ) from None
            object.__setattr__(self, "scheme", scheme)
        if (self.area_m2 is None) == (self.m_count is None):
            raise ConfigError("give exactly one of area_m2 and m_count")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if self.sigma_e_deg < 0:
            raise ConfigError("sigma_e_deg must be >= 0")
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise ConfigError("master_seed must fit in an unsigned 64-bit integer")
        for name in ("carrier_freq_hz", "gain_tx_dbi", "gain_rx_dbi", "tx_power_dbm",
                     "noise_power_dbm", "beta_deg", "ask_delta_phi_deg"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        for name in ("source_m", "receiver_m", "ris_center_m", "ris_normal"):
            value = getattr(self, name)
            if len(value) != 3:
                raise ConfigError(f"{name} must have three coordinates")

    @property
    def beta(self):
        return math.radians(self.beta_deg)

    @property
    def sigma_e(self):
        return math.radians(self.sigma_e_deg)

    @property
    def ask_delta_phi(self):
        return math.radians(self.ask_delta_phi_deg)

    def with_area(self, area_m2):
        return replace(self, area_m2=area_m2, m_count=None)

    def to_dict(self):
        d = asdict(self)
        d["scheme"] = self.scheme.value
        return d

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "m_count" in data and "area_m2" not in data:
            data = {**data, "area_m2": None}
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None


def build_scene(config):
    rf = RfParams(
        carrier_freq_hz=config.carrier_freq_hz,
        tx_power_w=dbm_to_watts(config.tx_power_dbm),
        noise_power_w=dbm_to_watts(config.noise_power_dbm),
        gain_tx_lin=dbi_to_linear(config.gain_tx_dbi),
        gain_rx_lin=dbi_to_linear(config.gain_rx_dbi),
    )
    ris = build_ris_grid(
        config.carrier_freq_hz,
        config.ris_center_m,
        config.ris_normal,
        area_m2=config.area_m2,
        m_count=config.m_count,
        element_side_m=config.element_side_m,
    )
    return Scene(
        source=config.source_m,
        receiver=config.receiver_m,
        ris=ris,
        rf=rf,
        beta=config.beta,
    )


def load_config(path, **overrides):
    """
    Read a JSON config. Top-level keys are :class:`SimConfig` field names;
    an optional ``"sweep"`` object is returned separately, untouched.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    sweep = data.pop("sweep", {})
    data.update({k: v for k, v in overrides.items() if v is not None})
    return SimConfig.from_dict(data), sweep


def save_config(config, path, sweep=None):
    data = config.to_dict()
    if sweep:
        data["sweep"] = sweep
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
