"""End-to-end interleaved conversion.

For each channel: pick edge offsets from the conditioner, evaluate the
analytic input at the conditioned instants, run the channel's sub-ADC, then
recombine round-robin. Channels share nothing mutable, so they may run on
separate threads without changing the result.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from .ddsm import DdsmSpec, ShapingConditioner
from .errors import AnalysisError, ConfigError, NyquistError, UnsupportedOrderError
from .scramble import ScrambleConditioner
from .signal import TestSignal, eval_derivative, eval_signal
from .subadc import SubAdc, SubAdcSpec
from .timing import ChannelTiming, InterleaveClock

CHUNK = 1 << 14


@dataclass(frozen=True)
class NoConditioning:
    kind = "none"

    def conditioner(self, channel, seed):
        return _Fixed()


@dataclass(frozen=True)
class ScrambleConditioning:
    g_squared: float
    dither_bits: int = 24
    kind = "scramble"

    def conditioner(self, channel, seed):
        return ScrambleConditioner(channel, self.g_squared, seed, self.dither_bits)


@dataclass(frozen=True)
class ShapeConditioning:
    ddsm: DdsmSpec = field(default_factory=DdsmSpec)
    kind = "shape"

    def conditioner(self, channel, seed):
        return ShapingConditioner(channel, self.ddsm, seed)


class _Fixed:
    def next(self, n):
        return np.zeros(n, dtype=np.int64)


@dataclass(frozen=True)
class SimulationSpec:
    clock: InterleaveClock
    channels: tuple
    signal: TestSignal
    subadc: SubAdcSpec = field(default_factory=SubAdcSpec)
    conditioning: object = field(default_factory=NoConditioning)
    n_total: int = 1 << 16
    seed: int = 1

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(self.channels))
        self.validate()

    def validate(self):
        L = self.clock.channels
        if len(self.channels) != L:
            raise ConfigError(f"expected {L} channel timings, got {len(self.channels)}")
        for i, ch in enumerate(self.channels):
            if ch.index != i:
                raise ConfigError(f"channel timing at position {i} has index {ch.index}")
        if not self.clock.fs > 2 * self.signal.bandwidth:
            raise NyquistError(
                f"Nyquist violated: F_S={self.clock.fs:g} <= 2*B={2 * self.signal.bandwidth:g}"
            )
        if int(self.n_total) != self.n_total or self.n_total < L:
            raise ConfigError(f"output length must be an integer >= L={L}, got {self.n_total}")


@dataclass
class InterleavedCapture:
    y: np.ndarray
    channel_outputs: list
    edge_offsets: list
    saturations: list
    spec: SimulationSpec

    @property
    def seed(self):
        return self.spec.seed

    def timing_error(self, i):
        """Conditioned timing error ``tau_i + r_i[n]*delta`` for channel ``i`` (seconds)."""
        ch = self.spec.channels[i]
        return ch.tau + self.edge_offsets[i] * ch.delta

    def error_moments(self):
        means, seconds = [], []
        for i in range(len(self.channel_outputs)):
            e = self.timing_error(i)
            means.append(float(np.mean(e)))
            seconds.append(float(np.mean(e * e)))
        return means, seconds


def _run_channel(spec, i):
    L, ts = spec.clock.channels, spec.clock.ts
    ch = spec.channels[i]
    count = len(range(i, spec.n_total, L))
    cond = spec.conditioning.conditioner(ch, spec.seed)
    adc = SubAdc(spec.subadc)
    y = np.empty(count)
    r = np.empty(count, dtype=float if spec.conditioning.kind == "shape" else np.int64)
    for start in range(0, count, CHUNK):
        stop = min(count, start + CHUNK)
        n = np.arange(start, stop)
        rr = cond.next(stop - start)
        t = (n * L + i) * ts + ch.tau + rr * ch.delta
        y[start:stop] = adc.convert(eval_signal(spec.signal, t))
        r[start:stop] = rr
    return y, r, adc.saturations


def simulate(spec, workers=1):
    """Run the interleaved converter described by ``spec``."""
    L = spec.clock.channels
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_channel(spec, i), range(L)))
    else:
        results = [_run_channel(spec, i) for i in range(L)]
    y = np.empty(spec.n_total)
    for i, (yi, _, _) in enumerate(results):
        y[i::L] = yi
    return InterleavedCapture(
        y=y,
        channel_outputs=[r[0] for r in results],
        edge_offsets=[r[1] for r in results],
        saturations=[r[2] for r in results],
        spec=spec,
    )


def simulate_single(signal, subadc, n_total, ts=1.0):
    """One converter sampling uniformly at ``1/ts``; the non-interleaved reference."""
    t = np.arange(n_total) * ts
    adc = SubAdc(subadc)
    return adc.convert(eval_signal(signal, t))


def taylor_sample(signal, t_ideal, offset, order=2):
    """Partial Taylor sum of ``x(t_ideal + offset)`` about ``t_ideal``."""
    if order not in (1, 2, 3):
        raise UnsupportedOrderError(f"Taylor order must be 1, 2 or 3, got {order!r}")
    total = eval_signal(signal, t_ideal)
    power = 1
    for k in range(1, order + 1):
        power = power * offset
        total = total + power / math.factorial(k) * eval_derivative(signal, t_ideal, k)
    return total


def taylor_remainder_bound(signal, offset, order=2):
    """Lagrange bound ``|offset|^(order+1) * sum(A w^(order+1)) / (order+1)!``."""
    k = order + 1
    peak = sum(t.amplitude * t.angular_frequency**k for t in signal.tones)
    return abs(offset) ** k * peak / math.factorial(k)


def taylor_check(capture, order=2):
    """Largest |exact - Taylor| over a capture's instants, and its remainder bound."""
    spec = capture.spec
    worst, emax = 0.0, 0.0
    for i, ch in enumerate(spec.channels):
        n = np.arange(len(capture.edge_offsets[i]))
        t0 = (n * spec.clock.channels + i) * spec.clock.ts
        e = capture.timing_error(i)
        diff = np.abs(eval_signal(spec.signal, t0 + e) - taylor_sample(spec.signal, t0, e, order))
        worst = max(worst, float(diff.max()))
        emax = max(emax, float(np.abs(e).max()))
    return worst, taylor_remainder_bound(spec.signal, emax, order)


def error_sequence(capture, reference):
    """Elementwise output difference between a capture and a reference run."""
    if len(capture.y) != len(reference.y):
        raise AnalysisError(
            f"capture lengths differ: {len(capture.y)} vs {len(reference.y)}"
        )
    return capture.y - reference.y


def make_channels(skews, delta):
    return tuple(ChannelTiming(i, float(tau), float(delta)) for i, tau in enumerate(skews))
