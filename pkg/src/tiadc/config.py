"""Run configuration: a JSON document with explicit units.

Times are given in units of the overall sampling period Ts (``*_ts`` keys)
and frequencies as fractions of F_S (``*_fs`` keys). Every default equals the
reference four-channel scenario, so an empty document is a valid config.
"""

from dataclasses import dataclass, field, fields, replace
import copy
import hashlib
import json
import math

from .ddsm import DdsmSpec
from .errors import ConfigError
from .signal import TestSignal, Tone
from .subadc import SubAdcSpec
from .timing import InterleaveClock

DEFAULT_TONE = {"amplitude_fs": 0.5, "frequency_fs": 21 / 16384, "phase_rad": 0.0}


@dataclass
class RunConfig:
    channels: int = 4
    ts_seconds: float = 1.0
    skews_ts: list = field(default_factory=lambda: [0.0, 0.15, 0.12, -0.15])
    delta_ts: float = 0.5
    tones: list = field(default_factory=lambda: [dict(DEFAULT_TONE)])
    subadc_kind: str = "delta_sigma2"
    subadc_levels: int = 8
    subadc_full_scale: float = 1.0
    g_squared: float = None  # None: smallest feasible value with 5% headroom
    scramble_dither_bits: int = 24
    ddsm_order: int = 2
    ddsm_levels: int = 4
    ddsm_step: float = 2.0
    ddsm_input_bits: int = 16
    ddsm_dither: bool = True
    samples: int = 1 << 16
    seed: int = 1
    nfft: int = None  # None: samples // 4
    window: str = "hann"
    band_center_fs: float = 0.25
    band_halfwidth_fs: object = None  # None: auto, "full": whole Nyquist band
    exclusion_bins: int = 3

    # --- derived objects -------------------------------------------------
    @property
    def ts(self):
        return self.ts_seconds

    @property
    def clock(self):
        return InterleaveClock(self.channels, self.ts_seconds)

    @property
    def skews_seconds(self):
        return [s * self.ts_seconds for s in self.skews_ts]

    @property
    def delta_seconds(self):
        return self.delta_ts * self.ts_seconds

    @property
    def signal(self):
        tones = [
            Tone(t["amplitude_fs"], 2 * math.pi * t["frequency_fs"] / self.ts_seconds, t["phase_rad"])
            for t in self.tones
        ]
        return TestSignal(tuple(tones), "sinusoid" if len(tones) == 1 else "multitone")

    @property
    def carrier_fs(self):
        return self.tones[0]["frequency_fs"]

    @property
    def subadc(self):
        return SubAdcSpec(self.subadc_kind, self.subadc_levels, self.subadc_full_scale)

    @property
    def ddsm(self):
        return DdsmSpec(
            self.ddsm_order, self.ddsm_levels, self.ddsm_step, self.ddsm_input_bits, self.ddsm_dither
        )

    @property
    def analysis_nfft(self):
        return self.nfft if self.nfft is not None else self.samples // 4

    def band_halfwidth(self):
        """SFDR search half-width in cycles/sample, or None for the full band.

        Auto: ``2*f0`` around F_S/4 behind a delta-sigma sub-ADC (covers the
        first images at F_S/4 +/- f0), full band behind an ideal quantizer.
        """
        if self.band_halfwidth_fs == "full":
            return None
        if self.band_halfwidth_fs is None:
            return 2 * self.carrier_fs if self.subadc_kind == "delta_sigma2" else None
        return self.band_halfwidth_fs

    # --- validation / serialization ---------------------------------------
    def validate(self):
        _check(isinstance(self.channels, int) and self.channels >= 1, "clock.channels must be an integer >= 1")
        _check(_num(self.ts_seconds) and self.ts_seconds > 0, "clock.ts_seconds must be > 0")
        _check(isinstance(self.skews_ts, list) and all(_num(s) for s in self.skews_ts),
               "timing.skews_ts must be a list of numbers")
        _check(len(self.skews_ts) == self.channels,
               f"timing.skews_ts needs one skew per channel ({self.channels}), got {len(self.skews_ts)}")
        _check(_num(self.delta_ts) and self.delta_ts > 0, "timing.delta_ts must be > 0")
        _check(isinstance(self.tones, list) and self.tones, "signal.tones must be a non-empty list")
        for t in self.tones:
            _check(isinstance(t, dict) and set(t) == set(DEFAULT_TONE),
                   f"each tone needs exactly the keys {sorted(DEFAULT_TONE)}")
            _check(all(_num(v) for v in t.values()), "tone fields must be numbers")
            _check(0 < t["frequency_fs"] < 0.5, "tone frequency_fs must be in (0, 0.5) (Nyquist)")
        _check(self.g_squared is None or (_num(self.g_squared) and self.g_squared > 0),
               "scramble.g_squared must be null or > 0")
        _check(isinstance(self.samples, int) and self.samples >= self.channels, "run.samples must be an integer >= channels")
        _check(isinstance(self.seed, int) and 0 <= self.seed < 2**64, "run.seed must be an unsigned 64-bit integer")
        _check(self.nfft is None or (isinstance(self.nfft, int) and self.nfft >= 2 and not self.nfft & (self.nfft - 1)),
               "analysis.nfft must be null or a power of two")
        _check(self.analysis_nfft <= self.samples, "analysis.nfft must not exceed run.samples")
        _check(self.window in ("hann", "rectangular"), "analysis.window must be 'hann' or 'rectangular'")
        _check(self.band_halfwidth_fs in (None, "full") or (_num(self.band_halfwidth_fs) and self.band_halfwidth_fs > 0),
               "analysis.band_halfwidth_fs must be null, 'full', or > 0")
        _check(isinstance(self.exclusion_bins, int) and self.exclusion_bins >= 0, "analysis.exclusion_bins must be >= 0")
        _check(isinstance(self.ddsm_dither, bool), "shape.dither must be true or false")
        # component constructors carry their own invariants
        _ = (self.clock, self.signal, self.subadc, self.ddsm)
        return self

    def to_dict(self):
        return {
            "clock": {"channels": self.channels, "ts_seconds": self.ts_seconds},
            "timing": {"skews_ts": list(self.skews_ts), "delta_ts": self.delta_ts},
            "signal": {"tones": copy.deepcopy(self.tones)},
            "subadc": {"kind": self.subadc_kind, "levels": self.subadc_levels, "full_scale": self.subadc_full_scale},
            "scramble": {"g_squared": self.g_squared, "dither_bits": self.scramble_dither_bits},
            "shape": {"order": self.ddsm_order, "levels": self.ddsm_levels, "step": self.ddsm_step,
                      "input_bits": self.ddsm_input_bits, "dither": self.ddsm_dither},
            "run": {"samples": self.samples, "seed": self.seed},
            "analysis": {"nfft": self.nfft, "window": self.window, "band_center_fs": self.band_center_fs,
                         "band_halfwidth_fs": self.band_halfwidth_fs, "exclusion_bins": self.exclusion_bins},
        }

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ConfigError("config root must be a JSON object")
        kwargs = {}
        for section, keys in _LAYOUT.items():
            body = doc.get(section, {})
            if not isinstance(body, dict):
                raise ConfigError(f"config section {section!r} must be an object")
            unknown = set(body) - set(keys)
            if unknown:
                raise ConfigError(f"unknown key(s) in {section!r}: {sorted(unknown)}")
            for key, attr in keys.items():
                if key in body:
                    kwargs[attr] = copy.deepcopy(body[key])
        unknown = set(doc) - set(_LAYOUT)
        if unknown:
            raise ConfigError(f"unknown config section(s): {sorted(unknown)}")
        return cls(**kwargs).validate()

    def hash(self):
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()

    def with_overrides(self, **changes):
        return replace(copy.deepcopy(self), **changes).validate()


_LAYOUT = {
    "clock": {"channels": "channels", "ts_seconds": "ts_seconds"},
    "timing": {"skews_ts": "skews_ts", "delta_ts": "delta_ts"},
    "signal": {"tones": "tones"},
    "subadc": {"kind": "subadc_kind", "levels": "subadc_levels", "full_scale": "subadc_full_scale"},
    "scramble": {"g_squared": "g_squared", "dither_bits": "scramble_dither_bits"},
    "shape": {"order": "ddsm_order", "levels": "ddsm_levels", "step": "ddsm_step",
              "input_bits": "ddsm_input_bits", "dither": "ddsm_dither"},
    "run": {"samples": "samples", "seed": "seed"},
    "analysis": {"nfft": "nfft", "window": "window", "band_center_fs": "band_center_fs",
                 "band_halfwidth_fs": "band_halfwidth_fs", "exclusion_bins": "exclusion_bins"},
}

assert {a for keys in _LAYOUT.values() for a in keys.values()} == {f.name for f in fields(RunConfig)}


def _num(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _check(ok, message):
    if not ok:
        raise ConfigError(message)


def load_config(path):
    """Parse a config file. I/O errors propagate as ``OSError``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return RunConfig.from_dict(doc)


def dump_config(cfg):
    return json.dumps(cfg.to_dict(), indent=2) + "\n"
