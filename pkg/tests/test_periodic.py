import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from laminates.mat2 import Vec2, det
from laminates.periodic import (PeriodicDeformation, SawtoothMode, correlation_integral, exact_weights, mc_weights,
                                parse_sign, sawtooth, sawtooth_slope, sign_str, support_points, torus_cells)

freq = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda v: v != (0, 0))
phase = st.fractions(min_value=0, max_value=1, max_denominator=24)


def grid_weights(d, n=400):
    """Midpoint-rule oracle: sign pattern of h' at the centres of an n x n grid."""
    x = (np.arange(n) + 0.5) / n
    X, Y = np.meshgrid(x, x, indexing="ij")
    codes = np.zeros_like(X, dtype=np.int64)
    for i, m in enumerate(d.modes):
        k, l = m.frequency
        t = k * X + l * Y + float(m.phase)
        codes += ((t - np.floor(t)) >= 0.5).astype(np.int64) << i
    counts = np.bincount(codes.ravel(), minlength=1 << d.N) / n / n
    return {e: counts[sum(1 << i for i, s in enumerate(e) if s < 0)] for e in itertools.product((1, -1), repeat=d.N)}


def test_sawtooth_shape():
    assert sawtooth(F(1, 4)) == F(1, 4)
    assert sawtooth(F(3, 4)) == F(1, 4)
    assert sawtooth(F(-1, 4)) == F(1, 4)
    assert sawtooth(F(1, 2)) == F(1, 2)
    assert [sawtooth_slope(F(t, 8)) for t in range(9)] == [0, 1, 1, 1, 0, -1, -1, -1, 0]


@given(st.fractions(min_value=-5, max_value=5, max_denominator=30))
def test_sawtooth_is_periodic_and_lipschitz(t):
    assert sawtooth(t + 1) == sawtooth(t)
    assert 0 <= sawtooth(t) <= F(1, 2)
    h = F(1, 1000)
    assert abs(sawtooth(t + h) - sawtooth(t)) <= h


def test_mode_validation():
    with pytest.raises(ValueError):
        SawtoothMode(Vec2(1, 0), (0, 0))
    with pytest.raises(ValueError):
        SawtoothMode(Vec2(1, 0), (F(1, 2), 1))


def test_edges_are_rank_one():
    d = PeriodicDeformation.from_frequencies([(1, 2), (3, -1)], amplitudes=[(2, 1), (0, 1)])
    for m in d.modes:
        assert det(m.edge) == 0
    pts = support_points(d)
    assert len(pts) == 4 and pts[(1, 1)] == d.modes[0].edge + d.modes[1].edge


def test_sign_strings_round_trip():
    for e in itertools.product((1, -1), repeat=3):
        assert parse_sign(sign_str(e)) == e
    assert parse_sign("+−-") == (1, -1, -1)


def test_three_mode_reference_weights():
    w = exact_weights(PeriodicDeformation.from_frequencies([(1, 0), (0, 1), (1, 1)], [0, 0, F(1, 4)]))
    assert w["+++"] == w["+--"] == F(1, 16)
    assert w["++-"] == w["---"] == F(3, 16)


@settings(max_examples=40, deadline=None)
@given(st.lists(freq, min_size=1, max_size=4), st.data())
def test_exact_weights_match_a_midpoint_grid(freqs, data):
    phases = [data.draw(phase) for _ in freqs]
    d = PeriodicDeformation.from_frequencies(freqs, phases)
    w = exact_weights(d)
    assert w.total() == 1
    g = grid_weights(d)
    # cell boundaries cross at most ~ 2 * 8 * n grid cells out of n^2
    for e in w.patterns():
        assert abs(float(w[e]) - g[e]) < 0.05


@settings(max_examples=40, deadline=None)
@given(freq, freq, phase, phase)
def test_two_independent_modes_are_uniform(n1, n2, c1, c2):
    d = PeriodicDeformation.from_frequencies([n1, n2], [c1, c2])
    w = exact_weights(d)
    if n1[0] * n2[1] - n1[1] * n2[0] != 0:
        assert set(w.as_strings().values()) == {F(1, 4)}
    else:
        assert d.collinear_pairs() == [(0, 1)]


@settings(max_examples=30, deadline=None)
@given(st.lists(freq, min_size=3, max_size=3), st.lists(phase, min_size=3, max_size=3))
def test_edge_sums_are_a_quarter(freqs, phases):
    d = PeriodicDeformation.from_frequencies(freqs, phases)
    w = exact_weights(d)
    collinear = set(d.collinear_pairs())
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        if (j, k) in collinear:
            continue
        for rest in itertools.product((1, -1), repeat=2):
            e = list(rest)
            e.insert(i, 1)
            f = list(e)
            f[i] = -1
            assert w[tuple(e)] + w[tuple(f)] == F(1, 4)


def test_torus_cells_tile_the_square():
    d = PeriodicDeformation.from_frequencies([(2, 1), (1, -3)], [F(1, 5), 0])
    cells = torus_cells(d)
    assert all(len(poly) >= 3 for poly, _ in cells)
    assert exact_weights(d).total() == 1


@pytest.mark.parametrize("k,l", [(1, 1), (1, 3), (3, 5), (5, 7), (2, 3), (4, 1)])
def test_correlation_integral_against_riemann_sum(k, l):
    n = 800
    x = (np.arange(n) + 0.5) / n
    X, Y = np.meshgrid(x, x, indexing="ij")
    for c in (F(0), F(1, 4), F(1, 2), F(5, 4), F(3, 2), F(7, 4)):
        t = k * X + l * Y + float(c)
        vals = np.where((t - 2 * np.floor(t / 2)) < 1, 1.0, -1.0)
        assert abs(vals.mean() - float(correlation_integral(k, l, c))) < 5e-3


def test_correlation_integral_extremes():
    assert correlation_integral(3, 5, F(1, 2)) == -F(1, 30)
    assert correlation_integral(3, 5, F(3, 2)) == F(1, 30)
    assert correlation_integral(3, 5, F(7, 2)) == F(1, 30)
    assert correlation_integral(2, 5, F(1, 3)) == 0


def test_mc_is_reproducible_and_worker_independent():
    d = PeriodicDeformation.from_frequencies([(1, 0), (0, 1), (1, 1)], [0, 0, F(1, 4)])
    a = mc_weights(d, 200_000, seed=11)
    b = mc_weights(d, 200_000, seed=11, workers=4)
    assert a.weights == b.weights
    assert mc_weights(d, 200_000, seed=12).weights != a.weights
    assert abs(a.total() - 1) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.lists(freq, min_size=2, max_size=3), st.data())
def test_weights_ignore_amplitudes_and_the_measure_has_zero_moments(freqs, data):
    phases = [data.draw(phase) for _ in freqs]
    amps = [data.draw(st.tuples(st.integers(-3, 3), st.integers(-3, 3))) for _ in freqs]
    d1 = PeriodicDeformation.from_frequencies(freqs, phases)
    d2 = PeriodicDeformation.from_frequencies(freqs, phases, amplitudes=amps)
    w = exact_weights(d1)
    assert w.weights == exact_weights(d2).weights
    # gradient of a periodic map: mean zero, and mean determinant zero
    pts = support_points(d2)
    mean = sum((w[e] * X for e, X in pts.items()), pts[next(iter(pts))] * 0)
    assert mean.is_zero()
    assert sum(w[e] * det(X) for e, X in pts.items()) == 0


@given(st.integers(1, 4), st.integers(1, 4), st.fractions(min_value=-4, max_value=4, max_denominator=12))
def test_correlation_integral_is_antiperiodic(k0, l0, c):
    k, l = 2 * k0 - 1, 2 * l0 - 1
    I = correlation_integral
    assert I(k, l, c + 2) == I(k, l, c)
    assert I(k, l, c) + I(k, l, c + 1) == 0
    assert abs(I(k, l, c)) <= F(1, 2 * k * l)
