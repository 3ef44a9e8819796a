"""Digital delta-sigma modulator that generates shaped edge offsets.

Error-feedback structure with noise transfer function ``(1 - z^-1)^P``: the
quantizer input is the (K-bit) constant input plus an optional LSB dither
bit plus filtered past quantization errors. The output ``r`` averages to the
input while its deviation is pushed toward high frequencies.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import _core
from .dither import LSB_DITHER_STREAM, DitherSource, stream_id
from .errors import ConfigError, OverloadError

CHUNK = 1 << 14


@dataclass(frozen=True)
class DdsmSpec:
    order: int = 2
    levels: int = 4
    step: float = 2.0
    input_bits: int = 16
    dither: bool = True

    def __post_init__(self):
        if self.order < 1:
            raise ConfigError(f"DDSM order P must be >= 1, got {self.order}")
        if self.levels < 2:
            raise ConfigError(f"DDSM level count M must be >= 2, got {self.levels}")
        if not self.step > 0:
            raise ConfigError(f"DDSM step a must be > 0, got {self.step}")
        if not 1 <= self.input_bits <= 40:
            raise ConfigError(f"DDSM input width K must be in 1..40, got {self.input_bits}")
        if self.levels + 1 - 2**self.order <= 0:
            raise ConfigError(
                f"no stable input range: M+1-2^P = {self.levels + 1 - 2 ** self.order} <= 0 "
                f"(P={self.order}, M={self.levels})"
            )

    @property
    def alphabet(self):
        half = (self.levels - 1) * self.step / 2.0
        return tuple(j * self.step - half for j in range(self.levels))

    @property
    def lsb(self):
        return 2.0 ** -self.input_bits

    @property
    def feedback(self):
        """Coefficients ``c_1..c_P`` of ``(1 - z^-1)^P`` (``c_0 = 1`` omitted)."""
        return np.array(
            [(-1) ** k * math.comb(self.order, k) for k in range(1, self.order + 1)], dtype=float
        )

    def overload_bound(self):
        """Largest admissible input magnitude, shrunk by one LSB when dithering."""
        bound = (self.levels + 1 - 2**self.order) * self.step / 2.0
        return bound - self.lsb if self.dither else bound


@dataclass
class DdsmState:
    """Past quantization errors, most recent first, plus the dither position."""

    errors: np.ndarray
    position: int = 0

    @classmethod
    def zeros(cls, order):
        return cls(np.zeros(order))


@dataclass
class LsbDither:
    seed: int
    stream: int = 0
    _source: DitherSource = field(init=False, repr=False)

    def __post_init__(self):
        self._source = DitherSource(self.seed, self.stream, bits=8)

    def bits(self, n):
        return self._source.lsb_bits(n)


def check_no_overload(x, spec):
    return abs(x) <= spec.overload_bound()


def quantize_input(x, spec):
    """Round ``x`` to ``input_bits`` fractional bits (ties upward)."""
    scale = 2.0**spec.input_bits
    return math.floor(x * scale + 0.5) / scale


def ddsm_step(state, x, spec, d=0):
    """One modulator update; returns ``(new_state, r)``.

    ``x`` is quantized to K bits on entry; ``d`` is the LSB dither bit.
    """
    errors = np.array(state.errors, dtype=float)
    out = np.empty(1)
    dither = np.array([1 if d else 0], dtype=np.uint8)
    _core.ddsm_run(
        quantize_input(x, spec), dither, spec.lsb, spec.feedback, errors,
        spec.levels, float(spec.step), out,
    )
    return DdsmState(errors, state.position + 1), float(out[0])


def predicted_second_moment(channel, spec):
    """Model of ``E[r^2]``: white quantization noise through the NTF plus the DC term.

    The NTF noise-power gain of ``(1 - z^-1)^P`` is ``C(2P, P)``.
    """
    if not check_no_overload(-channel.alpha, spec):
        raise OverloadError(
            f"channel {channel.index}: |alpha|={abs(channel.alpha):.6g} exceeds the no-overload "
            f"bound {spec.overload_bound():.6g}",
            channel.index,
        )
    return spec.step**2 / 12.0 * math.comb(2 * spec.order, spec.order) + channel.alpha**2


class ShapingConditioner:
    """Streaming DDSM for one channel, input ``-alpha``."""

    def __init__(self, channel, spec, seed):
        if not check_no_overload(-channel.alpha, spec):
            raise OverloadError(
                f"channel {channel.index}: DDSM input {-channel.alpha:.6g} outside no-overload "
                f"bound +/-{spec.overload_bound():.6g}",
                channel.index,
            )
        self.spec = spec
        self.x = quantize_input(-channel.alpha, spec)
        self.state = DdsmState.zeros(spec.order)
        self._coeffs = spec.feedback
        self._dither = LsbDither(seed, stream_id(LSB_DITHER_STREAM, channel.index))

    def next(self, n):
        spec = self.spec
        out = np.empty(n)
        if spec.dither:
            bits = self._dither.bits(n)
        else:
            bits = np.zeros(n, dtype=np.uint8)
        _core.ddsm_run(
            self.x, bits, spec.lsb, self._coeffs, self.state.errors,
            spec.levels, float(spec.step), out,
        )
        self.state.position += n
        return out


def generate_shaping_sequence(channel, spec, n, seed, chunk=CHUNK):
    cond = ShapingConditioner(channel, spec, seed)
    out = np.empty(n)
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        out[start:stop] = cond.next(stop - start)
    return out


def run_constant(x, spec, n, seed=0, stream=0):
    """Drive the modulator with a constant ``x`` for ``n`` steps (any in-bound x)."""
    out = np.empty(n)
    errors = np.zeros(spec.order)
    coeffs = spec.feedback
    xq = quantize_input(x, spec)
    source = LsbDither(seed, stream)
    for start in range(0, n, CHUNK):
        stop = min(n, start + CHUNK)
        bits = source.bits(stop - start) if spec.dither else np.zeros(stop - start, np.uint8)
        seg = np.empty(stop - start)
        _core.ddsm_run(xq, bits, spec.lsb, coeffs, errors, spec.levels, float(spec.step), seg)
        out[start:stop] = seg
    return out
