import math

import pytest

import arw


def test_lattice():
    assert not arw.representable(7)
    pts = arw.lattice_points(26)
    assert pts.shape == (72, 3)
    assert (pts**2).sum(axis=1).tolist() == [26] * 72
    assert arw.half_points(26).shape == (36, 3)


def test_correlations():
    rep = arw.correlation_report(1)
    assert rep["c4"] == 90
    assert rep["s2"] == pytest.approx(0.375)
    assert arw.correlation_counts(1, 2) == 6


def test_surface():
    s = arw.Surface("sphere", 0.24)
    a = s.area()
    assert a == pytest.approx(4 * math.pi * 0.24**2)
    assert s.interaction_integral(2) == pytest.approx(a * a / 3)
    assert s.is_static()
    assert not arw.Surface("cap", 0.24, math.pi / 3).is_static()
    with pytest.raises(ValueError):
        arw.Surface("sphere", 0.9)


def test_wave_and_lengths():
    w = arw.Wave(26, 3)
    assert w.m == 26
    assert len(w.coefficients) == 36
    assert w.value([0.1, 0.2, 0.3]) == pytest.approx(w.evaluate([[0.1, 0.2, 0.3]])[0])
    s = arw.Surface("sphere", 0.24)
    res = arw.minimum_resolution(26, 2.0)
    assert arw.nodal_curve_length(w, s, res) > 0
    mc = arw.monte_carlo(2, s, samples=20, seed=1)
    assert len(mc["lengths"]) == 20
    assert mc["predicted_mean"] == pytest.approx(arw.expected_length(2, s.area()))
    with pytest.raises(ValueError):
        arw.Wave(7, 1)


def test_chaos_and_limit():
    assert arw.alpha(0, 0) == pytest.approx(math.sqrt(math.pi / 2))
    s = arw.Surface("sphere", 0.24)
    l0, l2, l4 = arw.chaos_projections(arw.Wave(3, 1), s)
    assert l0 == pytest.approx(arw.expected_length(3, s.area()))
    c = arw.limit_coefficients(s)
    assert c["variance_coefficients"] == pytest.approx(c["variance_closed"], rel=1e-6)
    xs = arw.sample_limit(s, 1000, 5)
    assert len(xs) == 1000
    assert arw.predict_variance(26, s, "static") > 0


def test_two_point():
    n = [0.6, 0.8, 0.0]
    npr = [0.0, 0.6, 0.8]
    c = 0.5
    p = [c + 0.24 * v for v in n]
    pp = [c + 0.24 * v for v in npr]
    exact, se, taylor = arw.two_point(26, p, n, pp, npr)
    assert 0.2 < exact < 0.3
