"""Sampling-instant model for an L-way interleaved converter.

Channel ``i`` owns global output indices ``m = n*L + i``. Its nominal instant
is ``m*Ts``; the actual instant adds the static skew ``tau`` and a selected
edge offset ``r*delta``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import ConfigError, InvalidEdgeError


@dataclass(frozen=True)
class InterleaveClock:
    channels: int
    ts: float = 1.0

    def __post_init__(self):
        if int(self.channels) != self.channels or self.channels < 1:
            raise ConfigError(f"channel count L must be an integer >= 1, got {self.channels}")
        if not (math.isfinite(self.ts) and self.ts > 0):
            raise ConfigError(f"sampling period Ts must be > 0, got {self.ts}")

    @property
    def fs(self):
        return 1.0 / self.ts


@dataclass(frozen=True)
class ChannelTiming:
    index: int
    tau: float
    delta: float
    alpha: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise ConfigError(f"channel {self.index}: edge step delta must be > 0, got {self.delta}")
        if not math.isfinite(self.tau):
            raise ConfigError(f"channel {self.index}: skew must be finite")
        alpha = self.tau / self.delta
        if abs(alpha) >= 1:
            raise ConfigError(
                f"channel {self.index}: |tau/delta| must be < 1, got {alpha:.6g} "
                f"(tau={self.tau:g}, delta={self.delta:g})"
            )
        object.__setattr__(self, "alpha", alpha)


def _check_index(clock, i, n):
    if not 0 <= i < clock.channels:
        raise ConfigError(f"channel index {i} outside 0..{clock.channels - 1}")
    if np.any(np.asarray(n) < 0):
        raise ConfigError("per-channel sample index must be >= 0")


def ideal_instant(clock, i, n):
    """Nominal sampling time of channel ``i``'s ``n``-th sample."""
    _check_index(clock, i, n)
    if np.ndim(n):
        n = np.asarray(n)
    return (n * clock.channels + i) * clock.ts


def actual_instant(ch, clock, n, r=0, edges=None):
    """Conditioned sampling time ``ideal + tau + r*delta``.

    ``edges`` optionally restricts the admissible offsets ``r``.
    """
    if edges is not None:
        bad = np.setdiff1d(np.atleast_1d(r), np.asarray(sorted(edges)))
        if bad.size:
            raise InvalidEdgeError(
                f"edge offset(s) {bad.tolist()} not in configured set {sorted(edges)}"
            )
    if np.ndim(r):
        r = np.asarray(r)
    return ideal_instant(clock, ch.index, n) + ch.tau + r * ch.delta
