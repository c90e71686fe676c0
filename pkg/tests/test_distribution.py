import math

import pytest

from klec.curve import CurveParams
from klec.distribution import (
    AngleSample,
    angle_sample,
    distribution_report,
    epsilon_margin,
    ks_discrepancy,
    margin_report,
    moment_test,
    sine_squared_cdf,
    w_integral,
    w_value,
)
from klec.errors import MarginViolation


def test_angle_sample_anchors(F3):
    s1 = angle_sample(CurveParams(F3, F3.elem(1), 1))
    expected = math.acos(1 / (2 * math.sqrt(3)))
    assert len(s1.angles) == 2
    assert all(abs(t - expected) < 1e-12 for t in s1.angles)
    s2 = angle_sample(CurveParams(F3, F3.elem(2), 1))
    expected2 = math.acos(-1 / math.sqrt(3))
    assert all(abs(t - expected2) < 1e-12 for t in s2.angles)


def test_sample_length_is_place_count(F3):
    from klec.algebra import places_P

    for a in (2, 3):
        s = angle_sample(CurveParams(F3, F3.elem(1), a))
        assert len(s.angles) == places_P(F3, a).count


def test_limit_cdf_values():
    assert abs(sine_squared_cdf(math.pi / 2) - 0.5) < 1e-15
    assert abs(sine_squared_cdf(math.pi) - 1.0) < 1e-15
    assert sine_squared_cdf(0.0) == 0.0


def test_w_anchor():
    theta = math.acos(-1 / math.sqrt(3))
    assert abs(w_value(theta) - (-math.log(2 / 9))) < 1e-12


def test_w_integral_anchor(F3):
    s2 = angle_sample(CurveParams(F3, F3.elem(2), 1))
    wi, werr = w_integral(s2)
    assert abs(wi - 1.5040773967762742) < 1e-10
    assert abs(werr - abs(wi - math.log(16))) < 1e-15


def test_margins_anchor(F3):
    s1 = angle_sample(CurveParams(F3, F3.elem(1), 1))
    margins = margin_report(s1, 3)
    assert abs(margins["to_half_pi"] - 0.29284277172857553) < 1e-9
    assert epsilon_margin(3, 3, 1) == 3.0**-14
    assert all(v >= 3.0**-14 for v in margins.values())


def test_margin_violation_trap(F3):
    s1 = angle_sample(CurveParams(F3, F3.elem(1), 1))
    bad = AngleSample(3, 1, 1, (math.pi / 2,), s1.per_place)
    with pytest.raises(MarginViolation):
        margin_report(bad, 3)


def test_limit_moments_by_quadrature():
    """Independent quadrature of (2/pi) sin^2(t) cos(kt) fixes the targets."""
    n = 200001
    h = math.pi / (n - 1)
    for k, target in [(1, 0.0), (2, -0.5), (3, 0.0), (4, 0.0)]:
        vals = [
            (2 / math.pi) * math.sin(i * h) ** 2 * math.cos(k * i * h) for i in range(n)
        ]
        integral = h * (math.fsum(vals) - 0.5 * (vals[0] + vals[-1]))
        assert abs(integral - target) < 1e-8


def test_empirical_moments_bounded(F3):
    s = angle_sample(CurveParams(F3, F3.elem(1), 3))
    for k in (1, 2, 3):
        assert -1.0 <= moment_test(s, k) <= 1.0


def test_embedding_invariance_of_angle_multiset(F3, F5):
    for F, gamma, a in [(F3, 1, 2), (F3, 2, 3), (F5, 2, 1), (F5, 3, 2)]:
        params = CurveParams(F, F.elem(gamma), a)
        ref = angle_sample(params, embedding_index=1).angles
        for k in range(2, F.p):
            other = angle_sample(params, embedding_index=k).angles
            assert all(abs(x - y) < 1e-9 for x, y in zip(ref, other))


def test_moment_rate_with_fitted_constant(F3):
    """|moment_k - limit| against the C * sqrt(a) q^(-a/4) * (total variation
    of cos(k.)) rate; C is fitted on the data and reported, never asserted
    as an external constant.  C = 2 holds with room on this family."""
    targets = {1: 0.0, 2: -0.5, 3: 0.0}
    fitted = 0.0
    for gamma_code in (1, 2):
        for a in (6, 8):
            s = angle_sample(CurveParams(F3, F3.elem(gamma_code), a))
            rate = math.sqrt(a) * 3.0 ** (-a / 4)
            for k, target in targets.items():
                gap = abs(moment_test(s, k) - target)
                fitted = max(fitted, gap / (rate * 2 * k))
    assert fitted <= 2.0, f"fitted constant {fitted}"


def test_report_assembles(F3):
    s = angle_sample(CurveParams(F3, F3.elem(2), 2))
    rep = distribution_report(s, 3)
    assert set(rep.serialize()) == {"ks", "w_integral", "w_error", "margins", "epsilon_a", "moments"}
    assert 0.0 <= rep.ks_distance <= 1.0
