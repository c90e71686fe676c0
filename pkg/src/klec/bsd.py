"""Exact central value, the Tate-Shafarevich order it encodes, and the
Brauer-Siegel ratio.

The central value is computed as the per-place product
prod (1 - g Kl q^-d + g^2 q^-d) collapsed in Q(zeta_p); no polynomial
expansion is needed, which is what makes level a = 8 at q = 3 (heights
around 3^3281) cheap.  Logarithms of the resulting huge integers go through
bit-length arithmetic, never through floats of the numbers themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import DEFAULT_BUDGET, places_P
from .charsums import all_place_sums
from .curve import CurveParams
from .cyclotomic import CycInt
from .errors import NonIntegerShaOrder, ZeroCentralValue
from .lfunction import padic_valuation

# calibrated envelope for |log L(1/q)| / log H <= C/a on the tested grids
# (q <= 9, a <= 8: the observed maximum of a*|mid| is ~1.07); this is an
# artifact constant with margin, not a claimed theorem constant
BOUNDS_ENVELOPE_C = 2.0


@dataclass(frozen=True)
class ShaReport:
    central_value: Fraction
    sha_order: int
    is_perfect_square: bool
    gcd_with_p: int
    ordp_central: Fraction
    brauer_siegel: float
    logq_H: int

    def serialize(self) -> dict:
        return {
            "central_value": f"{self.central_value.numerator}/{self.central_value.denominator}",
            "sha_order": str(self.sha_order),
            "square": self.is_perfect_square,
            "gcd_p": self.gcd_with_p,
            "ordp_central": f"{self.ordp_central.numerator}/{self.ordp_central.denominator}",
            "brauer_siegel": self.brauer_siegel,
            "logq_H": self.logq_H,
        }


def log_big(n: int) -> float:
    """Natural log of a positive integer of any size, to ~1e-15 relative."""
    if n <= 0:
        raise ValueError("log of a nonpositive integer")
    bl = n.bit_length()
    if bl <= 53:
        return math.log(n)
    shift = bl - 53
    return math.log(n >> shift) + shift * math.log(2)


def log_fraction(x: Fraction) -> float:
    return log_big(x.numerator) - log_big(x.denominator)


def central_value(
    params: CurveParams,
    place_sums=None,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Fraction:
    """L(1/q) as an exact rational, via the collapsed per-place product."""
    F = params.field
    q, a, p = params.q, params.a, F.p
    if place_sums is None:
        place_sums = all_place_sums(places_P(F, a, budget), params.gamma, workers)
    numerator = CycInt.from_int(p, 1)
    denom_exp = 0
    for place, gv, kv in place_sums:
        d = place.degree
        factor = CycInt.from_int(p, q**d) - gv.value * kv.value + gv.value * gv.value
        numerator = numerator * factor
        denom_exp += d
    assert denom_exp == q**a - 1
    value = Fraction(numerator.as_rational_integer(), q**denom_exp)
    if value == 0:
        raise ZeroCentralValue("L(1/q) = 0 contradicts non-vanishing")
    assert value > 0, "central value must be positive under RH"
    return value


def sha_report(
    params: CurveParams,
    place_sums=None,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> ShaReport:
    """|Sha| = q^(logq_H - 1) * L(1/q), with its consistency battery.

    Squareness of the order is a consistency check (Cassels pairing), not an
    input; a failure is raised as an anomaly rather than silently kept.
    """
    F = params.field
    q, a, p, f = params.q, params.a, F.p, F.f
    value = central_value(params, place_sums, workers, budget)
    logq_H = (q**a + 1) // 2
    scaled = value * q ** (logq_H - 1)
    if scaled.denominator != 1 or scaled <= 0:
        raise NonIntegerShaOrder(f"BSD formula gave {scaled}")
    sha = int(scaled)
    root = math.isqrt(sha)
    # squareness is a consistency check, not an input: a False here is an
    # anomaly the caller must surface, never silently accept
    square = root * root == sha
    ordp = Fraction(
        padic_valuation(value.numerator, p) - padic_valuation(value.denominator, p), f
    )
    assert ordp == Fraction(-(q**a - 1), 2), "central-value valuation off"
    bs = log_big(sha) / (logq_H * math.log(q)) if sha > 1 else 0.0
    return ShaReport(
        central_value=value,
        sha_order=sha,
        is_perfect_square=square,
        gcd_with_p=math.gcd(sha, p),
        ordp_central=ordp,
        brauer_siegel=bs,
        logq_H=logq_H,
    )


def brauer_siegel(params: CurveParams, report: ShaReport | None = None, **kw):
    """(ratio, decomposition): log|Sha|/log H and its exact BSD rearrangement
    1 - log q/log H + log L(1/q)/log H, which must agree to float accuracy."""
    if report is None:
        report = sha_report(params, **kw)
    logH = report.logq_H * math.log(params.q)
    decomposition = 1.0 - math.log(params.q) / logH + log_fraction(report.central_value) / logH
    return report.brauer_siegel, decomposition


def central_value_bounds_check(params: CurveParams, report: ShaReport | None = None, **kw):
    """(lhs, mid, rhs) with mid = log|L(1/q)|/log H and |mid| <= C/a for the
    calibrated envelope constant."""
    if report is None:
        report = sha_report(params, **kw)
    logH = report.logq_H * math.log(params.q)
    mid = log_fraction(report.central_value) / logH
    lhs, rhs = -BOUNDS_ENVELOPE_C / params.a, BOUNDS_ENVELOPE_C / params.a
    assert lhs <= mid <= rhs, f"bounds envelope violated: {mid} at a={params.a}"
    return lhs, mid, rhs
