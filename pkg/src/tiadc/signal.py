"""Closed-form continuous-time test signals.

Signals are sums of sinusoids evaluated analytically, so they can be sampled
at arbitrary (irregular) instants and differentiated exactly.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ConfigError, UnsupportedOrderError

MAX_DERIVATIVE_ORDER = 4


@dataclass(frozen=True)
class Tone:
    amplitude: float
    angular_frequency: float  # rad/s
    phase: float = 0.0  # rad

    def __post_init__(self):
        if not (math.isfinite(self.amplitude) and self.amplitude >= 0):
            raise ConfigError(f"tone amplitude must be finite and >= 0, got {self.amplitude}")
        if not (math.isfinite(self.angular_frequency) and self.angular_frequency > 0):
            raise ConfigError(
                f"tone angular frequency must be finite and > 0, got {self.angular_frequency}"
            )
        if not math.isfinite(self.phase):
            raise ConfigError(f"tone phase must be finite, got {self.phase}")

    @property
    def frequency(self):
        return self.angular_frequency / (2 * math.pi)


@dataclass(frozen=True)
class TestSignal:
    """Sum of tones ``sum_k A_k sin(w_k t + phi_k)``.

    Amplitudes are relative to a full scale of 1.0.
    """

    __test__ = False  # not a pytest class

    tones: tuple
    kind: str = "sinusoid"

    def __post_init__(self):
        object.__setattr__(self, "tones", tuple(self.tones))
        if not self.tones:
            raise ConfigError("a test signal needs at least one tone")
        if self.kind not in ("sinusoid", "multitone"):
            raise ConfigError(f"unknown signal kind {self.kind!r}")
        if self.kind == "sinusoid" and len(self.tones) != 1:
            raise ConfigError("a sinusoid signal has exactly one tone")

    @classmethod
    def sinusoid(cls, amplitude, angular_frequency, phase=0.0):
        return cls((Tone(amplitude, angular_frequency, phase),), "sinusoid")

    @classmethod
    def multitone(cls, tones):
        return cls(tuple(Tone(*t) if not isinstance(t, Tone) else t for t in tones), "multitone")

    @property
    def bandwidth(self):
        """Highest tone frequency in Hz (cycles per second)."""
        return max(t.frequency for t in self.tones)

    @property
    def max_angular_frequency(self):
        return max(t.angular_frequency for t in self.tones)

    def eval(self, t):
        return eval_signal(self, t)

    def derivative(self, t, order):
        return eval_derivative(self, t, order)


def _math_for(t):
    # mpmath scalars get arbitrary-precision evaluation; everything else numpy.
    if type(t).__module__.startswith("mpmath"):
        import mpmath

        return mpmath
    return np


def eval_signal(signal, t):
    """Evaluate ``signal`` at time(s) ``t`` (scalar, array, or mpmath number)."""
    return eval_derivative(signal, t, 0)


def eval_derivative(signal, t, order):
    """Exact ``order``-th time derivative of the tone sum at ``t``.

    Uses ``d^k/dt^k sin(wt + phi) = w^k sin(wt + phi + k pi/2)`` with the
    quarter-turn applied as a sign/sin-cos swap rather than a phase shift.
    """
    if not isinstance(order, (int, np.integer)) or order < 0 or order > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrderError(
            f"derivative order must be an integer in 0..{MAX_DERIVATIVE_ORDER}, got {order!r}"
        )
    m = _math_for(t)
    if m is np:
        t = np.asarray(t, dtype=float)
    quarter = order % 4
    total = 0
    for tone in signal.tones:
        if m is np:
            w, amp, ph = tone.angular_frequency, tone.amplitude, tone.phase
        else:
            w, amp, ph = m.mpf(tone.angular_frequency), m.mpf(tone.amplitude), m.mpf(tone.phase)
        arg = w * t + ph
        base = m.sin(arg) if quarter in (0, 2) else m.cos(arg)
        sign = -1 if quarter in (2, 3) else 1
        total = total + sign * amp * w**order * base
    if m is np and np.ndim(total) == 0:
        return float(total)
    return total
