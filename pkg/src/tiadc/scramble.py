"""Edge scrambling: i.i.d. edge offsets ``r in {-1, 0, 1}``.

The occurrence probabilities satisfy three moment conditions: they sum to
one, ``E[alpha + r] = 0`` and ``E[(alpha + r)**2] = g**2``. The last makes the
residual second-order error the same for every channel, so it whitens into
the noise floor instead of forming channel-periodic tones.
"""

from dataclasses import dataclass

import numpy as np

from .dither import SCRAMBLE_STREAM, DitherSource, stream_id
from .errors import ConfigError, InfeasibleProbabilitiesError

EDGES = (-1, 0, 1)
SELF_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class ScrambleProbabilities:
    p_minus1: float
    p_zero: float
    p_plus1: float
    g_squared: float
    alpha: float

    @property
    def thresholds(self):
        return self.p_minus1, self.p_minus1 + self.p_zero

    def mean(self):
        """Exact mean of r under these probabilities."""
        return self.p_plus1 - self.p_minus1

    def centered_second_moment(self):
        """Exact ``E[(r + alpha)**2]``."""
        a = self.alpha
        return (
            self.p_minus1 * (a - 1) ** 2 + self.p_zero * a**2 + self.p_plus1 * (a + 1) ** 2
        )


def moment_matrix(alpha):
    """Coefficient matrix of the moment system, unknowns ordered (p-1, p0, p+1)."""
    a = alpha
    return np.array(
        [
            [1.0, 1.0, 1.0],
            [1.0 - a, -a, -(1.0 + a)],
            [(1.0 - a) ** 2, a**2, (1.0 + a) ** 2],
        ]
    )


def feasible_g_range(alpha):
    """Open interval of ``g**2`` giving valid probabilities for ``alpha``."""
    if not abs(alpha) < 1:
        raise ConfigError(f"|alpha| must be < 1, got {alpha}")
    return max(0.0, abs(alpha) - alpha * alpha), 1.0 - alpha * alpha


def solve_probabilities(alpha, g_squared):
    if not abs(alpha) < 1:
        raise ConfigError(f"|alpha| must be < 1, got {alpha}")
    if not g_squared > 0:
        raise ConfigError(f"g^2 must be > 0, got {g_squared}")
    s = g_squared + alpha * alpha
    closed = np.array([(s + alpha) / 2.0, 1.0 - s, (s - alpha) / 2.0])
    # np.linalg.solve is LAPACK gesv, i.e. LU with partial pivoting
    generic = np.linalg.solve(moment_matrix(alpha), np.array([1.0, 0.0, g_squared]))
    if np.max(np.abs(closed - generic)) > SELF_CHECK_TOL:
        raise RuntimeError(
            f"closed-form and linear-solve probabilities disagree: {closed} vs {generic}"
        )
    if np.any(closed < 0) or np.any(closed > 1):
        lo, hi = max(0.0, abs(alpha) - alpha * alpha), 1.0 - alpha * alpha
        raise InfeasibleProbabilitiesError(
            f"g^2={g_squared:.6g} infeasible for alpha={alpha:.6g}: "
            f"need {lo:.6g} <= g^2 <= {hi:.6g} (probabilities {closed.tolist()})"
        )
    p_m, p_0, p_p = (float(v) for v in closed)
    return ScrambleProbabilities(p_m, p_0, p_p, float(g_squared), float(alpha))


def edge_from_uniform(probs, u):
    """Threshold quantizer: -1 below p-1, 0 below p-1 + p0, else +1.

    Works elementwise on arrays; ties go to the upper region.
    """
    t1, t2 = probs.thresholds
    u = np.asarray(u)
    r = np.where(u < t1, -1, np.where(u < t2, 0, 1)).astype(np.int8)
    return int(r) if r.ndim == 0 else r


def draw_edge(probs, dither):
    return edge_from_uniform(probs, dither.uniform())


def default_g_squared(alphas, headroom=1.05, floor=2.0**-24):
    """Smallest ``g**2`` feasible for every channel, times ``headroom``."""
    lo = max(feasible_g_range(a)[0] for a in alphas)
    return max(lo * headroom, floor)


class ScrambleConditioner:
    """Streaming generator of one channel's scrambled edge offsets."""

    def __init__(self, channel, g_squared, seed, dither_bits=24):
        try:
            self.probs = solve_probabilities(channel.alpha, g_squared)
        except InfeasibleProbabilitiesError as exc:
            raise InfeasibleProbabilitiesError(f"channel {channel.index}: {exc}", channel.index) from None
        self.dither = DitherSource(seed, stream_id(SCRAMBLE_STREAM, channel.index), dither_bits)

    def next(self, n):
        return edge_from_uniform(self.probs, self.dither.uniform(n)).astype(np.int64)


def generate_scramble_sequence(channel, g_squared, n, dither):
    """``n`` i.i.d. edge offsets for ``channel`` drawn from ``dither``."""
    probs = solve_probabilities(channel.alpha, g_squared)
    return edge_from_uniform(probs, dither.uniform(n)).astype(np.int64)
