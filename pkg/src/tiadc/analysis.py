"""Spectral measurement and analytic spur predictions.

Powers are relative to a full scale of 1.0 amplitude, so a full-scale sine
reads 0.5 (-3.01 dB). Per-bin powers use coherent-gain ("spectrum")
normalization: an on-bin tone reads its true power in its peak bin, and
broadband noise per bin is inflated by the window's noise bandwidth.
"""

from dataclasses import dataclass, field, replace
import cmath
import math

import numpy as np
from scipy import signal as sps

from .errors import AnalysisError

WINDOWS = ("hann", "rectangular")
DB_FLOOR = 1e-30


@dataclass(frozen=True)
class SpectrumReport:
    freqs: np.ndarray  # cycles/sample
    power: np.ndarray
    window: str
    nfft: int
    n_segments: int
    enbw_bins: float
    analyzed_mean_square: float
    carrier_bin: int = None
    band: tuple = None
    spurs: tuple = ()
    sfdr_db: float = None
    noise_power: float = None

    @property
    def psd_db(self):
        return 10 * np.log10(np.maximum(self.power, DB_FLOOR))

    @property
    def noise_floor_db(self):
        return None if self.noise_power is None else 10 * math.log10(max(self.noise_power, DB_FLOOR))

    def bin_of(self, freq):
        return int(round(freq * self.nfft))

    def integrated_power(self):
        """Total power implied by the bins (removes the window's noise-bandwidth inflation)."""
        return float(np.sum(self.power) / self.enbw_bins)


def _window(name, nfft):
    if name == "hann":
        return sps.get_window("hann", nfft, fftbins=True), nfft // 2
    if name == "rectangular":
        return np.ones(nfft), 0
    raise AnalysisError(f"unknown window {name!r}; expected one of {WINDOWS}")


def psd(y, nfft, window="hann"):
    """Averaged periodogram (Welch) of ``y``.

    Hann segments overlap by half; rectangular segments do not overlap.
    """
    if int(nfft) != nfft or nfft < 2 or nfft & (nfft - 1):
        raise AnalysisError(f"nfft must be a power of two, got {nfft}")
    y = np.asarray(y, dtype=float)
    if len(y) < nfft:
        raise AnalysisError(f"need at least nfft={nfft} samples, got {len(y)}")
    w, overlap = _window(window, nfft)
    freqs, power = sps.welch(
        y, fs=1.0, window=w, nperseg=nfft, noverlap=overlap,
        detrend=False, scaling="spectrum", return_onesided=True,
    )
    hop = nfft - overlap
    starts = range(0, len(y) - nfft + 1, hop)
    w2 = w * w
    ms = np.mean([np.dot(w2, y[s:s + nfft] ** 2) for s in starts]) / w2.sum()
    enbw = nfft * w2.sum() / w.sum() ** 2
    return SpectrumReport(
        freqs=freqs, power=power, window=window, nfft=int(nfft), n_segments=len(starts),
        enbw_bins=float(enbw), analyzed_mean_square=float(ms),
    )


def fold(freq):
    """Map a normalized frequency onto [0, 0.5]."""
    f = freq % 1.0
    return 1.0 - f if f > 0.5 else f


def image_frequencies(f0, channels):
    """Frequencies of the channel-periodic images ``f0 + k/L``, k = 1..L-1, folded."""
    return [fold(f0 + k / channels) for k in range(1, channels)]


def measure_sfdr(report, carrier, exclusion=3, band=None):
    """Carrier power minus the largest other bin inside ``band`` (inclusive bin range)."""
    p = report.power
    lo, hi = (0, len(p) - 1) if band is None else band
    lo, hi = max(0, lo), min(len(p) - 1, hi)
    k = np.arange(lo, hi + 1)
    k = k[np.abs(k - carrier) > exclusion]
    if k.size == 0:
        raise AnalysisError(f"empty SFDR search band {band} after excluding carrier bin {carrier}")
    return 10 * math.log10(max(p[carrier], DB_FLOOR)) - 10 * math.log10(max(p[k].max(), DB_FLOOR))


def characterize(report, f0, channels, band_center=0.25, band_halfwidth=None, exclusion=3):
    """Attach carrier, image spurs, SFDR and in-band noise to ``report``.

    ``band_halfwidth=None`` searches the whole Nyquist band; otherwise the
    search is restricted to ``band_center +/- band_halfwidth`` (cycles/sample).
    The noise estimate averages band bins away from the carrier and images.
    """
    carrier = report.bin_of(f0)
    last = len(report.power) - 1
    if band_halfwidth is None:
        band = (0, last)
    else:
        band = (report.bin_of(band_center - band_halfwidth), report.bin_of(band_center + band_halfwidth))
    sfdr = measure_sfdr(report, carrier, exclusion, band)
    images = [report.bin_of(f) for f in image_frequencies(f0, channels)]
    spurs = tuple((b, float(report.psd_db[b])) for b in images)
    k = np.arange(max(0, band[0]), min(last, band[1]) + 1)
    keep = np.abs(k - carrier) > exclusion
    for b in images:
        keep &= np.abs(k - b) > exclusion
    noise = float(np.mean(report.power[k[keep]])) if keep.any() else None
    return replace(report, carrier_bin=carrier, band=band, spurs=spurs, sfdr_db=sfdr, noise_power=noise)


def max_image_db(report):
    return max(db for _, db in report.spurs)


def predicted_sfdr(channels, delta, omega0):
    """Residual second-order SFDR (dB) from per-channel ``(tau, S)`` pairs.

    ``10 log10(4 / (w0^4 * sum((S*delta^2 - tau^2)^2)))``; ``inf`` when the
    residual sum vanishes.
    """
    channels = list(channels)
    if not channels:
        raise AnalysisError("need at least one channel")
    total = sum((s * delta**2 - tau**2) ** 2 for tau, s in channels)
    if total == 0:
        return math.inf
    return 10 * math.log10(4.0 / (omega0**4 * total))


@dataclass(frozen=True)
class ResidualTone:
    """Per-channel second-order error coefficients and the tones they imply.

    ``coefficients[i]`` multiplies ``sin(w0 t)`` at channel ``i``'s instants.
    ``image_amplitudes[k]`` is the amplitude of the real tone at ``f0 + k/L``;
    ``common`` is the part that lands on the carrier itself.
    """

    coefficients: tuple
    image_amplitudes: dict = field(default_factory=dict)
    common: float = 0.0


def _channel_tones(coeffs):
    L = len(coeffs)
    dft = [sum(c * cmath.exp(-2j * math.pi * k * i / L) for i, c in enumerate(coeffs)) for k in range(L)]
    return dft[0].real / L, {k: abs(dft[k]) / L for k in range(1, L)}


def predicted_residual_tone(channels, delta, amplitude, omega0):
    coeffs = tuple(0.5 * (tau**2 - s * delta**2) * amplitude * omega0**2 for tau, s in channels)
    common, images = _channel_tones(coeffs)
    return ResidualTone(coeffs, images, common)


def first_order_image_amplitudes(taus, amplitude, omega0):
    """Image-tone amplitudes of the uncorrected ``tau_i * x'(t)`` error for a sine input."""
    _, images = _channel_tones([tau * amplitude * omega0 for tau in taus])
    return images


def first_order_sfdr(taus, omega0):
    """SFDR set by the largest first-order skew image (dB)."""
    worst = max(first_order_image_amplitudes(taus, 1.0, omega0).values())
    return math.inf if worst == 0 else -20 * math.log10(worst)


def white_floor_power(g_squared, delta, tones, nfft, enbw_bins):
    """Expected per-bin power of the white scrambling error ``e * x'(t)``.

    ``tones`` is an iterable of (amplitude, angular frequency).
    """
    total = g_squared * delta**2 * sum(a * a * w * w / 2.0 for a, w in tones)
    return total * 2.0 * enbw_bins / nfft


def psd_slope(report, f_lo, f_hi):
    """Least-squares slope of ``psd_db`` against log10(frequency), dB/decade."""
    f = report.freqs
    sel = (f >= f_lo) & (f <= f_hi) & (f > 0)
    if np.count_nonzero(sel) < 3:
        raise AnalysisError(f"too few bins in [{f_lo}, {f_hi}] for a slope fit")
    slope, _ = np.polyfit(np.log10(f[sel]), report.psd_db[sel], 1)
    return float(slope)
