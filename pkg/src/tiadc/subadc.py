"""Per-channel behavioral quantizers.

``ideal_uniform`` is a memoryless uniform quantizer. ``delta_sigma2`` is a
second-order loop (two unity-gain integrators of ``x - y`` with the input fed
straight to the quantizer), giving a unity signal transfer function and
noise transfer function ``(1 - z^-1)^2``.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _core
from .errors import ConfigError

KINDS = ("ideal_uniform", "delta_sigma2")


@dataclass(frozen=True)
class SubAdcSpec:
    kind: str = "delta_sigma2"
    levels: int = 8
    full_scale: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown sub-ADC kind {self.kind!r}; expected one of {KINDS}")
        if int(self.levels) != self.levels or self.levels < 2:
            raise ConfigError(f"sub-ADC levels must be an integer >= 2, got {self.levels}")
        if not self.full_scale > 0:
            raise ConfigError(f"sub-ADC full scale must be > 0, got {self.full_scale}")

    @property
    def step(self):
        return 2.0 * self.full_scale / (self.levels - 1)

    @property
    def reconstruction_levels(self):
        return np.arange(self.levels) * self.step - self.full_scale


class QuantizedStream(NamedTuple):
    codes: np.ndarray
    saturations: int


def uniform_quantize(x, spec):
    """Nearest reconstruction level (ties upward), clipped to the outer levels."""
    x = np.asarray(x, dtype=float)
    j = np.floor((x + spec.full_scale) / spec.step + 0.5)
    saturated = int(np.count_nonzero((j < 0) | (j > spec.levels - 1)))
    j = np.clip(j, 0, spec.levels - 1)
    return j * spec.step - spec.full_scale, saturated


class SubAdc:
    """Stateful converter for one channel; feed it consecutive chunks."""

    def __init__(self, spec):
        self.spec = spec
        self.state = np.zeros(3)  # integrator 1, integrator 2, last (x - y)
        self.saturations = 0

    def convert(self, x):
        spec = self.spec
        x = np.ascontiguousarray(x, dtype=float)
        if spec.kind == "ideal_uniform":
            y, sat = uniform_quantize(x, spec)
        else:
            y = np.empty_like(x)
            sat = _core.ds2_run(x, y, self.state, int(spec.levels), float(spec.full_scale))
        self.saturations += sat
        return y


def quantize_stream(samples, spec):
    """Convert a whole stream from reset state."""
    adc = SubAdc(spec)
    codes = adc.convert(samples)
    return QuantizedStream(codes, adc.saturations)
