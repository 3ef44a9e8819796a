from fractions import Fraction
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tiadc.dither import DitherSource
from tiadc.errors import InfeasibleProbabilitiesError
from tiadc.scramble import (
    ScrambleConditioner,
    ScrambleProbabilities,
    default_g_squared,
    draw_edge,
    edge_from_uniform,
    feasible_g_range,
    generate_scramble_sequence,
    solve_probabilities,
)
from tiadc.timing import ChannelTiming


def exact_solve(alpha, g2):
    """Gauss-Jordan on the moment system over the rationals."""
    a, g2 = Fraction(alpha), Fraction(g2)
    rows = [
        [Fraction(1), Fraction(1), Fraction(1), Fraction(1)],
        [1 - a, -a, -(1 + a), Fraction(0)],
        [(1 - a) ** 2, a * a, (1 + a) ** 2, g2],
    ]
    for col in range(3):
        piv = next(r for r in range(col, 3) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        rows[col] = [v / rows[col][col] for v in rows[col]]
        for r in range(3):
            if r != col:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[r][3] for r in range(3)]


def test_symmetric_case():
    p = solve_probabilities(0.0, 0.25)
    assert (p.p_minus1, p.p_zero, p.p_plus1) == pytest.approx((0.125, 0.75, 0.125), abs=1e-15)


def test_skewed_case_matches_exact_solve():
    oracle = exact_solve("0.15", "0.25")
    assert [float(v) for v in oracle] == pytest.approx([0.21125, 0.7275, 0.06125], abs=1e-15)
    p = solve_probabilities(0.15, 0.25)
    assert (p.p_minus1, p.p_zero, p.p_plus1) == pytest.approx((0.21125, 0.7275, 0.06125), abs=1e-14)


def test_skewed_case_monte_carlo_moments():
    p = solve_probabilities(0.15, 0.25)
    n = 1_000_000
    r = edge_from_uniform(p, DitherSource(11, 0).uniform(n)).astype(float)
    var = p.p_minus1 + p.p_plus1 - 0.15**2
    assert abs(r.mean() + 0.15) < 5 * math.sqrt(var / n)
    second = (r + 0.15) ** 2
    assert abs(second.mean() - 0.25) < 5 * second.std() / math.sqrt(n)


def test_infeasible():
    with pytest.raises(InfeasibleProbabilitiesError):
        solve_probabilities(0.9, 0.05)  # p+1 = (0.05 + 0.81 - 0.9)/2 = -0.02


@pytest.mark.parametrize("alpha,expected", [(0.0, (0.0, 1.0)), (0.5, (0.25, 0.75)), (0.15, (0.1275, 0.9775))])
def test_feasible_g_range(alpha, expected):
    assert feasible_g_range(alpha) == pytest.approx(expected, abs=1e-15)
    # oracle: scan g^2 and record where the solve succeeds
    grid = np.linspace(1e-4, 1.0, 9999)
    ok = []
    for g2 in grid:
        try:
            solve_probabilities(alpha, g2)
            ok.append(g2)
        except InfeasibleProbabilitiesError:
            pass
    step = grid[1] - grid[0]
    assert min(ok) == pytest.approx(max(expected[0], grid[0]), abs=step)
    assert max(ok) == pytest.approx(expected[1], abs=step)


@pytest.mark.parametrize("u,r", [(0.1, -1), (0.69, 0), (0.70, 1), (0.2, 0), (0.0, -1), (0.999, 1)])
def test_threshold_quantizer(u, r):
    probs = ScrambleProbabilities(0.2, 0.5, 0.3, g_squared=0.0, alpha=0.0)
    assert edge_from_uniform(probs, u) == r


def test_draw_edge_uses_dither():
    probs = solve_probabilities(0.1, 0.3)
    a, b = DitherSource(5, 3), DitherSource(5, 3)
    u = b.uniform(20)
    assert [draw_edge(probs, a) for _ in range(20)] == list(edge_from_uniform(probs, u))


def test_dither_is_k_bit_uniform():
    d = DitherSource(1, 0, bits=8)
    k = d.integers(256 * 400)
    assert k.max() < 256
    counts = np.bincount(k.astype(np.int64), minlength=256)
    chi2 = ((counts - 400) ** 2 / 400).sum()
    assert chi2 < 255 + 5 * math.sqrt(2 * 255)


def test_dither_chunking_does_not_change_stream():
    whole = DitherSource(99, 7).uniform(10_000)
    src = DitherSource(99, 7)
    parts = np.concatenate([src.uniform(n) for n in (1, 999, 4000, 5000)])
    np.testing.assert_array_equal(whole, parts)


def test_sequence_properties():
    ch = ChannelTiming(1, 0.0, 0.5)
    r = generate_scramble_sequence(ch, 1e-12, 10_000, DitherSource(3, 1))
    assert np.count_nonzero(r) == 0
    ch = ChannelTiming(2, 0.3 * 0.5, 0.5)
    r1 = generate_scramble_sequence(ch, 0.25, 5000, DitherSource(3, 2))
    r2 = generate_scramble_sequence(ch, 0.25, 5000, DitherSource(3, 2))
    np.testing.assert_array_equal(r1, r2)
    assert set(np.unique(r1)) <= {-1, 0, 1}


def test_error_sequence_is_channel_independent():
    delta, g2, n = 0.5, 0.2205, 400_000
    stats = []
    for i, tau in enumerate([0.0, 0.15, 0.12, -0.15]):
        ch = ChannelTiming(i, tau, delta)
        r = ScrambleConditioner(ch, g2, seed=42).next(n)
        e = tau + r * delta
        assert abs(e.mean()) < 5 * e.std() / math.sqrt(n)
        stats.append(np.mean(e * e))
    target = g2 * delta**2
    for s in stats:
        assert s == pytest.approx(target, rel=0.02)
    for a in stats:
        for b in stats:
            assert a == pytest.approx(b, rel=0.02)


def test_default_g_squared():
    alphas = [0.0, 0.3, 0.24, -0.3]
    assert default_g_squared(alphas) == pytest.approx(1.05 * 0.21)
    assert default_g_squared([0.0, 0.0]) > 0


feasible_pairs = st.floats(-0.95, 0.95).flatmap(
    lambda a: st.tuples(
        st.just(a),
        st.floats(*feasible_g_range(a)).filter(lambda g: g > 0),
    )
)


@settings(max_examples=200, deadline=None)
@given(feasible_pairs)
def test_probability_invariants(pair):
    alpha, g2 = pair
    try:
        p = solve_probabilities(alpha, g2)
    except InfeasibleProbabilitiesError:
        # only at the rounding edge of the closed interval
        lo, hi = feasible_g_range(alpha)
        assert min(abs(g2 - lo), abs(g2 - hi)) < 1e-12
        return
    assert p.p_minus1 + p.p_zero + p.p_plus1 == pytest.approx(1.0, abs=1e-12)
    assert all(0 <= v <= 1 for v in (p.p_minus1, p.p_zero, p.p_plus1))
    assert p.p_minus1 - p.p_plus1 == pytest.approx(alpha, abs=1e-12)
    assert p.p_minus1 + p.p_plus1 == pytest.approx(g2 + alpha * alpha, abs=1e-12)
    assert p.mean() == pytest.approx(-alpha, abs=1e-12)
    assert p.centered_second_moment() == pytest.approx(g2, abs=1e-12)
