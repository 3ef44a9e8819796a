import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tiadc.analysis import psd, psd_slope
from tiadc.errors import ConfigError
from tiadc.subadc import SubAdc, SubAdcSpec, quantize_stream, uniform_quantize

N18 = 1 << 18


def test_levels():
    spec = SubAdcSpec("ideal_uniform", 8, 1.0)
    np.testing.assert_allclose(spec.reconstruction_levels, np.linspace(-1, 1, 8), atol=1e-15)


def test_ideal_zero_sample_ties_up():
    y, sat = uniform_quantize(0.0, SubAdcSpec("ideal_uniform", 8))
    assert float(y) == pytest.approx(1 / 7)
    assert sat == 0


def test_ideal_clips_and_counts():
    y, sat = uniform_quantize([1.5, -2.0, 0.2], SubAdcSpec("ideal_uniform", 8))
    assert y[0] == 1.0 and y[1] == -1.0
    assert sat == 2


def test_invalid_specs():
    with pytest.raises(ConfigError):
        SubAdcSpec("flash")
    with pytest.raises(ConfigError):
        SubAdcSpec(levels=1)
    with pytest.raises(ConfigError):
        SubAdcSpec(full_scale=0.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1.0, 1.0), min_size=1, max_size=50), st.integers(2, 4096))
def test_ideal_error_within_half_lsb(xs, levels):
    spec = SubAdcSpec("ideal_uniform", levels)
    y, sat = uniform_quantize(xs, spec)
    assert sat == 0
    assert np.abs(y - np.asarray(xs)).max() <= spec.step / 2 * (1 + 1e-12)


def test_delta_sigma_dc_gain():
    out = quantize_stream(np.full(N18, 0.25), SubAdcSpec())
    assert out.codes.mean() == pytest.approx(0.25, abs=1e-3)
    assert out.saturations == 0


def test_delta_sigma_zero_input():
    out = quantize_stream(np.zeros(N18), SubAdcSpec())
    assert abs(out.codes.mean()) < 1e-3
    levels = SubAdcSpec().reconstruction_levels
    assert np.abs(out.codes[:, None] - levels).min(axis=1).max() < 1e-12


def test_delta_sigma_shaping_slope():
    rng = np.random.default_rng(0)
    n = 1 << 20
    x = 0.5 * np.sin(2 * np.pi * 21 / 16384 * np.arange(n)) + 1e-3 * rng.standard_normal(n)
    out = quantize_stream(x, SubAdcSpec())
    rep = psd(out.codes - x, nfft=1 << 17)
    assert psd_slope(rep, 3e-3, 3e-2) == pytest.approx(40.0, abs=4.0)


def test_delta_sigma_error_is_bounded():
    # STF = 1, so y - x = (1 - z^-1)^2 e with |e| <= step/2 when unsaturated
    n = 1 << 16
    x = 0.6 * np.sin(2 * np.pi * 0.01 * np.arange(n))
    spec = SubAdcSpec()
    out = quantize_stream(x, spec)
    assert out.saturations == 0
    assert np.abs(out.codes - x).max() <= 4 * spec.step / 2 + 1e-12


def test_chunked_conversion_matches_whole():
    x = 0.7 * np.sin(0.01 * np.arange(10_000))
    whole = quantize_stream(x, SubAdcSpec()).codes
    adc = SubAdc(SubAdcSpec())
    parts = np.concatenate([adc.convert(c) for c in np.array_split(x, 7)])
    np.testing.assert_array_equal(whole, parts)


def test_overdriven_loop_saturates():
    out = quantize_stream(np.full(1000, 1.5), SubAdcSpec())
    assert out.saturations > 0
