import math
from fractions import Fraction

import pytest

from klec.algebra import build_field
from klec.bsd import (
    brauer_siegel,
    central_value,
    central_value_bounds_check,
    log_big,
    log_fraction,
    sha_report,
)
from klec.curve import CurveParams


def test_central_value_anchors(F3):
    assert central_value(CurveParams(F3, F3.elem(1), 1)) == Fraction(1, 3)
    assert central_value(CurveParams(F3, F3.elem(2), 1)) == Fraction(4, 3)


def test_sha_anchors(F3):
    rep1 = sha_report(CurveParams(F3, F3.elem(1), 1))
    assert rep1.sha_order == 1
    assert rep1.is_perfect_square and rep1.gcd_with_p == 1
    rep2 = sha_report(CurveParams(F3, F3.elem(2), 1))
    assert rep2.sha_order == 4
    assert rep2.is_perfect_square and rep2.gcd_with_p == 1


@pytest.mark.parametrize("p,f,gamma,a", [(3, 1, 1, 2), (3, 1, 2, 3), (5, 1, 3, 1), (3, 2, 4, 1)])
def test_sha_battery(p, f, gamma, a):
    F = build_field(p, f)
    rep = sha_report(CurveParams(F, F.elem(gamma), a))
    assert rep.sha_order > 0
    assert rep.is_perfect_square
    assert rep.gcd_with_p == 1
    assert rep.ordp_central == Fraction(-(F.q**a - 1), 2)


def test_brauer_siegel_anchors(F3):
    r1, d1 = brauer_siegel(CurveParams(F3, F3.elem(1), 1))
    assert r1 == 0.0 and abs(d1) < 1e-12
    r2, d2 = brauer_siegel(CurveParams(F3, F3.elem(2), 1))
    assert abs(r2 - math.log(4) / math.log(9)) < 1e-12
    assert abs(r2 - d2) < 1e-9


def test_bounds_check_anchors(F3):
    lhs, mid, rhs = central_value_bounds_check(CurveParams(F3, F3.elem(2), 1))
    assert abs(mid - math.log(4 / 3) / math.log(9)) < 1e-12
    assert lhs <= mid <= rhs
    _, mid1, _ = central_value_bounds_check(CurveParams(F3, F3.elem(1), 1))
    assert abs(mid1 + 0.5) < 1e-12  # log(1/3)/log(9) = -1/2


def test_log_big_accuracy():
    n = 3**4000 + 12345
    approx = log_big(n)
    assert abs(approx - 4000 * math.log(3)) < 1e-6
    assert abs(log_big(10**15) - math.log(10**15)) < 1e-12
    assert abs(log_fraction(Fraction(4, 3)) - math.log(4 / 3)) < 1e-12


def test_sha_consistency_product_vs_polynomial(F3, F5):
    from klec.lfunction import closed_form_lpolynomial

    for F, gamma, a in [(F3, 1, 2), (F3, 2, 2), (F3, 1, 3), (F5, 2, 1)]:
        params = CurveParams(F, F.elem(gamma), a)
        rep = sha_report(params)
        L = closed_form_lpolynomial(params)
        scaled = L.central_value() * F.q ** (rep.logq_H - 1)
        assert scaled == rep.sha_order
