import pytest

from klec.algebra import build_field
from klec.curve import (
    CurveParams,
    POINT_AT_INFINITY,
    bad_places_report,
    curve_invariants,
    isogeny_identity_check,
    j_invariants_equal,
    torsion_structure,
)
from klec.errors import ZeroGamma


def test_invariants_anchors(F3):
    inv = curve_invariants(CurveParams(F3, F3.elem(1), 1))
    assert inv.logq_H == 2
    assert inv.logq_N == 8
    assert inv.b_degree == 4
    assert inv.tamagawa == 4
    assert inv.torsion_order == 2
    inv2 = curve_invariants(CurveParams(F3, F3.elem(1), 2))
    assert inv2.logq_H == 5 and inv2.b_degree == 16


@pytest.mark.parametrize(
    "p,f,gamma,a", [(3, 1, 1, 1), (3, 1, 2, 3), (5, 1, 2, 1), (7, 1, 3, 1), (3, 2, 5, 1)]
)
def test_degree_bookkeeping_identity(p, f, gamma, a):
    F = build_field(p, f)
    q = F.q
    inv = curve_invariants(CurveParams(F, F.elem(gamma), a))
    assert 12 * inv.logq_H == 2 * q**a + (4 * q**a + 6)
    assert inv.logq_N == 4 * inv.logq_H
    assert inv.disc.degree() == 2 * q**a


def test_bad_places_anchors(F3, F5):
    rep = bad_places_report(CurveParams(F3, F3.elem(1), 1))
    assert rep.finite_places_degree_sum == 6
    assert rep.squarefree
    assert rep.infinite_fiber.kodaira == "I*_12"
    assert rep.infinite_fiber.delta == 18
    assert rep.infinite_fiber.conductor_exponent == 2
    rep5 = bad_places_report(CurveParams(F5, F5.elem(2), 1))
    assert rep5.finite_places_degree_sum == 10
    assert rep5.squarefree


def test_torsion_structure(F3, F5):
    pts = torsion_structure(CurveParams(F3, F3.elem(1), 1))
    assert len(pts) == 2
    assert pts[0] is POINT_AT_INFINITY
    x0, y0 = pts[1]
    assert x0.is_zero() and y0.is_zero()
    assert len(torsion_structure(CurveParams(F5, F5.elem(3), 2))) == 2


def test_zero_gamma_rejected(F3):
    with pytest.raises(ZeroGamma):
        CurveParams(F3, F3.zero(), 1)


@pytest.mark.parametrize("p,gamma", [(3, 1), (5, 4), (7, 2)])
def test_isogeny_identity_concrete(p, gamma):
    F = build_field(p, 1)
    assert isogeny_identity_check(CurveParams(F, F.elem(gamma), 1))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_isogeny_identity_symbolic(p):
    assert isogeny_identity_check(field=build_field(p, 1))


def test_pairwise_distinct_j_invariants(F3, F5):
    grid = []
    for F in (F3, F5):
        for gamma in range(1, 3):
            for a in (1, 2):
                grid.append(
                    ((F.q, gamma, a), curve_invariants(CurveParams(F, F.elem(gamma), a)))
                )
    for i, (ki, vi) in enumerate(grid):
        for kj, vj in grid[i + 1 :]:
            if ki[0] != kj[0]:
                continue  # different base fields are incomparable here
            assert not j_invariants_equal(vi, vj), (ki, kj)
    assert j_invariants_equal(grid[0][1], grid[0][1])


def test_bad_supports_disjoint_for_distinct_gamma(F3):
    """For fixed a and different gamma, the two squarefree loci are coprime."""
    from klec.curve import _disc_quadratic

    for a in (1, 2):
        d1 = _disc_quadratic(CurveParams(F3, F3.elem(1), a))
        d2 = _disc_quadratic(CurveParams(F3, F3.elem(2), a))
        assert d1.gcd(d2).degree() == 0
