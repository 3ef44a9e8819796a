"""Named scenarios (ideal / uncorrected / scramble / shape) and their metrics."""

import math

from . import analysis
from .ddsm import predicted_second_moment
from .engine import (
    NoConditioning,
    ScrambleConditioning,
    ShapeConditioning,
    SimulationSpec,
    make_channels,
    simulate,
)
from .scramble import default_g_squared

SCENARIOS = ("ideal", "uncorrected", "scramble", "shape")


def resolve_g_squared(cfg):
    if cfg.g_squared is not None:
        return cfg.g_squared
    alphas = [s / cfg.delta_ts for s in cfg.skews_ts]
    return default_g_squared(alphas)


def build_spec(cfg, scenario):
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}")
    skews = [0.0] * cfg.channels if scenario == "ideal" else cfg.skews_seconds
    channels = make_channels(skews, cfg.delta_seconds)
    if scenario == "scramble":
        conditioning = ScrambleConditioning(resolve_g_squared(cfg), cfg.scramble_dither_bits)
    elif scenario == "shape":
        conditioning = ShapeConditioning(cfg.ddsm)
    else:
        conditioning = NoConditioning()
    return SimulationSpec(
        clock=cfg.clock, channels=channels, signal=cfg.signal, subadc=cfg.subadc,
        conditioning=conditioning, n_total=cfg.samples, seed=cfg.seed,
    )


def predicted_sfdr(cfg, spec):
    """Analytic SFDR for a scenario and the model that produced it."""
    omega0 = spec.signal.tones[0].angular_frequency
    taus = [ch.tau for ch in spec.channels]
    kind = spec.conditioning.kind
    if kind == "none":
        return analysis.first_order_sfdr(taus, omega0), "first_order_image"
    if kind == "scramble":
        g2 = spec.conditioning.g_squared
        pairs = [(ch.tau, g2 + ch.alpha**2) for ch in spec.channels]
    else:
        pairs = [(ch.tau, predicted_second_moment(ch, spec.conditioning.ddsm)) for ch in spec.channels]
    return analysis.predicted_sfdr(pairs, cfg.delta_seconds, omega0), "second_order_residual"


def measure(cfg, capture):
    report = analysis.psd(capture.y, cfg.analysis_nfft, cfg.window)
    return analysis.characterize(
        report, cfg.carrier_fs, cfg.channels, cfg.band_center_fs, cfg.band_halfwidth(), cfg.exclusion_bins
    )


def _finite(x):
    return None if x is None or not math.isfinite(x) else float(x)


def run_scenario(cfg, scenario, workers=1):
    """Simulate and measure one scenario; returns ``(capture, report, metrics)``."""
    spec = build_spec(cfg, scenario)
    capture = simulate(spec, workers=workers)
    report = measure(cfg, capture)
    full = analysis.characterize(
        report, cfg.carrier_fs, cfg.channels, exclusion=cfg.exclusion_bins
    )
    predicted, model = predicted_sfdr(cfg, spec)
    means, seconds = capture.error_moments()
    lo, hi = report.band
    metrics = {
        "scenario": scenario,
        "sfdr_db_measured": float(report.sfdr_db),
        "sfdr_db_predicted": _finite(predicted),
        "error_mean_per_channel": means,
        "error_second_moment_per_channel": seconds,
        "seed": cfg.seed,
        "config_hash": cfg.hash(),
        "prediction_model": model if scenario != "ideal" else None,
        "sfdr_band_norm": [lo / report.nfft, hi / report.nfft],
        "sfdr_db_full_band": float(full.sfdr_db),
        "max_image_db": float(analysis.max_image_db(report)),
        "noise_floor_db": _finite(report.noise_floor_db),
        "carrier_db": float(report.psd_db[report.carrier_bin]),
        "g_squared": spec.conditioning.g_squared if scenario == "scramble" else None,
        "subadc_saturations": int(sum(capture.saturations)),
    }
    return capture, report, metrics
