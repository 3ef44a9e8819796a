import numpy as np
import pytest
from hypothesis import given, strategies as st

from tiadc.errors import ConfigError, InvalidEdgeError
from tiadc.timing import ChannelTiming, InterleaveClock, actual_instant, ideal_instant


def test_ideal_instant_examples():
    assert ideal_instant(InterleaveClock(4, 1.0), 0, 0) == 0
    assert ideal_instant(InterleaveClock(4, 1.0), 2, 3) == 14
    assert ideal_instant(InterleaveClock(1, 0.5), 0, 7) == 3.5


def test_ideal_instant_index_errors():
    clock = InterleaveClock(4, 1.0)
    with pytest.raises(ConfigError):
        ideal_instant(clock, 4, 0)
    with pytest.raises(ConfigError):
        ideal_instant(clock, 0, -1)


def test_actual_instant_examples():
    clock = InterleaveClock(1, 1.0)
    ch = ChannelTiming(0, 0.0, 1.0)
    assert actual_instant(ch, clock, 10, 0) == 10
    # ideal instant 10, tau 0.1, delta 1, r = -1
    assert actual_instant(ChannelTiming(0, 0.1, 1.0), clock, 10, -1) == pytest.approx(9.1, abs=1e-12)
    assert actual_instant(ChannelTiming(0, 0.15, 0.5), clock, 4, 3) == pytest.approx(5.65, abs=1e-12)


def test_invalid_edge():
    clock = InterleaveClock(4, 1.0)
    ch = ChannelTiming(1, 0.1, 0.5)
    with pytest.raises(InvalidEdgeError):
        actual_instant(ch, clock, 0, 2, edges={-1, 0, 1})
    with pytest.raises(InvalidEdgeError):
        actual_instant(ch, clock, np.arange(3), np.array([0, 1, 3]), edges={-1, 0, 1})
    assert actual_instant(ch, clock, 0, 1, edges={-1, 0, 1}) == pytest.approx(1 + 0.1 + 0.5)


def test_channel_timing_invariants():
    ch = ChannelTiming(2, 0.15, 0.5)
    assert ch.alpha == 0.15 / 0.5
    with pytest.raises(ConfigError):
        ChannelTiming(0, 0.5, 0.5)  # |alpha| = 1
    with pytest.raises(ConfigError):
        ChannelTiming(0, 0.0, 0.0)
    with pytest.raises(ConfigError):
        InterleaveClock(0, 1.0)
    with pytest.raises(ConfigError):
        InterleaveClock(4, -1.0)


@given(st.integers(1, 8), st.floats(0.1, 10), st.integers(0, 10_000), st.floats(-0.99, 0.99), st.floats(0.01, 2))
def test_zero_edge_recovers_skew_exactly(L, ts, n, alpha, delta):
    clock = InterleaveClock(L, ts)
    i = n % L
    ch = ChannelTiming(i, alpha * delta, delta)
    t0 = ideal_instant(clock, i, n)
    assert actual_instant(ch, clock, n, 0) == t0 + ch.tau


def test_monotonic_within_channel():
    clock = InterleaveClock(4, 1.0)
    ch = ChannelTiming(1, 0.15, 0.5)
    rng = np.random.default_rng(0)
    n = np.arange(5000)
    r = rng.choice([-3, -1, 1, 3], size=n.size)  # |tau| + 3*delta = 1.65 < L*Ts
    assert np.all(np.diff(actual_instant(ch, clock, n, r)) > 0)
