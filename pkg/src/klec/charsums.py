"""Exact quadratic Gauss sums and Kloosterman sums attached to places.

For a place v with representative root beta, the additive character is
x -> zeta_p^Tr(beta*x) with the absolute trace of the residue field; sums are
accumulated as length-p histograms of trace values by the kernels and turned
into cyclotomic integers once per place.  Every constructed value is
certified on the spot: the Gauss square identity, the p-adic-unit property
and total realness of Kloosterman sums are asserted, not assumed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._kernels_py import _vadd
from .algebra import FieldElem, FieldSpec, Place, PlaceSet, quadratic_character
from .cyclotomic import CycInt, ord_one_minus_zeta
from .errors import DegenerateAngle, ZeroGamma


@dataclass(frozen=True)
class GaussValue:
    place: Place
    value: CycInt
    epsilon_class: int  # quarter turns: the phase is exp(i * epsilon_class * pi/2)

    @property
    def epsilon(self) -> float:
        return self.epsilon_class * math.pi / 2


@dataclass(frozen=True)
class KloostermanValue:
    place: Place
    gamma: FieldElem
    value: CycInt
    modulus_norm: int  # q^deg v = kl * kl'


@dataclass(frozen=True)
class Angle:
    theta: float
    place: Place
    embedding_index: int


def _hist_to_cyc(p: int, hist) -> CycInt:
    """The sum  -sum_r n_r zeta^r  from a length-p histogram."""
    return CycInt.from_zeta_powers(p, [-int(n) for n in hist])


def raw_gauss(field: FieldSpec, beta_code: int) -> CycInt:
    """Gauss sum -sum lambda(x) zeta^Tr(beta*x) over the given field."""
    if beta_code == 0:
        raise ZeroGamma("the additive character must be nontrivial")
    hist = kernels.gauss_histogram(
        field.log[beta_code], field.M, field.trace_by_log, field.p
    )
    return _hist_to_cyc(field.p, hist)


def raw_kloosterman(field: FieldSpec, beta_code: int, alpha_code: int) -> CycInt:
    """Kloosterman sum -sum_{x != 0} zeta^Tr(beta*(x + alpha/x))."""
    if beta_code == 0:
        raise ZeroGamma("the additive character must be nontrivial")
    if alpha_code == 0:
        raise ZeroGamma("Kloosterman sums need a nonzero parameter")
    hist = kernels.kloosterman_histogram(
        field.log[beta_code],
        field.log[alpha_code],
        field.M,
        field.zech_np,
        field.trace_by_log,
        field.p,
    )
    return _hist_to_cyc(field.p, hist)


def _effective_beta(place: Place, character_scale: FieldElem | None) -> int:
    """Code of beta, scaled by c when the base character psi^(c) is requested."""
    if character_scale is None:
        return place.beta.code
    Fv = place.residue_field
    base = character_scale.field
    if character_scale.code == 0:
        raise ZeroGamma("character scale must be a unit")
    emb, _ = Fv.embedding_from(base)
    return Fv.mul(place.beta.code, emb[character_scale.code])


def lambda_at_minus_one(field: FieldSpec) -> int:
    """lambda(-1) = (-1)^((q-1)/2)."""
    return 1 - 2 * (field.neg_one_log & 1)


def gauss_sum(place: Place, character_scale: FieldElem | None = None) -> GaussValue:
    """The place's Gauss sum, with its certified fourth-root-of-unity class.

    Certification: the exact square identity g^2 = lambda(-1) q^d pins the
    magnitude to q^(d/2) and the axis (real vs imaginary); the direction on
    that axis comes from the compensated embedding, whose error bound is
    checked against half the magnitude.
    """
    Fv = place.residue_field
    value = raw_gauss(Fv, _effective_beta(place, character_scale))
    sign = lambda_at_minus_one(Fv)
    square = (value * value).as_rational_integer()
    if square != sign * Fv.q:
        raise AssertionError("Gauss square identity failed")  # pragma: no cover
    emb = value.complex_embedding(1)
    mag = math.sqrt(Fv.q)
    err_bound = 4 * 2.2e-16 * sum(abs(c) for c in value.coeffs) + 1e-12
    if err_bound > mag / 2:
        raise AssertionError("embedding too coarse to classify")  # pragma: no cover
    if sign > 0:  # real axis
        assert abs(emb.im) <= err_bound
        cls = 0 if emb.re > 0 else 2
    else:  # imaginary axis
        assert abs(emb.re) <= err_bound
        cls = 1 if emb.im > 0 else 3
    return GaussValue(place, value, cls)


def kloosterman_sum(
    place: Place, gamma: FieldElem, character_scale: FieldElem | None = None
) -> KloostermanValue:
    """The place's Kloosterman sum Kl_gamma(v), p-adic-unit-checked."""
    if gamma.code == 0:
        raise ZeroGamma("gamma must be in F_q^x")
    Fv = place.residue_field
    emb, _ = Fv.embedding_from(gamma.field)
    value = raw_kloosterman(Fv, _effective_beta(place, character_scale), emb[gamma.code])
    if ord_one_minus_zeta(value) != 0:
        raise AssertionError("Kloosterman sum is not a p-adic unit")  # pragma: no cover
    if value.galois_conjugate(Fv.p - 1) != value:
        raise AssertionError("Kloosterman sum is not totally real")  # pragma: no cover
    return KloostermanValue(place, gamma, value, Fv.q)


def salie_check(place: Place, gamma: FieldElem) -> bool:
    """Compare the Salie form -sum_y lambda(y^2 - 4 gamma) psi(y) with Kl exactly."""
    Fv = place.residue_field
    emb, _ = Fv.embedding_from(gamma.field)
    gcode = emb[gamma.code]
    c = Fv.neg(Fv.mul(gcode, Fv.log_to_unit(4 % Fv.p)))  # -4*gamma
    beta_log = place.beta.log()
    M, p = Fv.M, Fv.p
    j = np.arange(M, dtype=np.int64)
    t = _vadd((2 * j) % M, np.full(M, Fv.log[c], dtype=np.int64), Fv.zech_np, M)
    lam = np.where(t == M, 0, 1 - 2 * (t & 1)).astype(np.int64)
    r = Fv.trace_by_log[(beta_log + j) % M]
    hist = np.zeros(p, dtype=np.int64)
    np.add.at(hist, r, lam)
    hist[0] += quadratic_character(FieldElem(Fv, c))  # y = 0 term, psi(0) = 1
    salie = _hist_to_cyc(p, hist)
    kl = kloosterman_sum(place, gamma).value
    return salie == kl


def kloosterman_power_sum(kv: KloostermanValue, m: int) -> CycInt:
    """s_m = kl^m + kl'^m by the quadratic recurrence
    s_0 = 2, s_1 = Kl, s_{j+1} = Kl*s_j - q^d*s_{j-1}."""
    if m < 0:
        raise ValueError("power index must be >= 0")
    p = kv.value.p
    s_prev = CycInt.from_int(p, 2)
    if m == 0:
        return s_prev
    s_cur = kv.value
    for _ in range(m - 1):
        s_prev, s_cur = s_cur, kv.value * s_cur - kv.modulus_norm * s_prev
    return s_cur


def angle_of(kv: KloostermanValue, k: int = 1) -> Angle:
    """theta with iota_k(Kl) = 2 q^(d/2) cos(theta), in (0, pi) minus pi/2."""
    emb = kv.value.complex_embedding(k)
    scale = 2.0 * math.sqrt(kv.modulus_norm)
    if abs(emb.im) > 1e-9 * (1.0 + abs(emb.re)):
        raise AssertionError("embedding of a totally real value has imaginary part")
    ratio = emb.re / scale
    if not -1.0 < ratio < 1.0 or ratio == 0.0:
        raise DegenerateAngle(f"cos(theta) = {ratio} at place {kv.place.poly.serialize()}")
    return Angle(math.acos(ratio), kv.place, k)


def all_place_sums(
    placeset: PlaceSet,
    gamma: FieldElem,
    workers: int = 1,
    character_scale: FieldElem | None = None,
) -> list[tuple[Place, GaussValue, KloostermanValue]]:
    """Gauss and Kloosterman data for every place, in place order.

    Per-place computations are independent pure functions; the thread map
    preserves list order, so output is deterministic for any worker count.
    """

    def one(place: Place):
        return (
            place,
            gauss_sum(place, character_scale),
            kloosterman_sum(place, gamma, character_scale),
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, placeset.places))
    return [one(v) for v in placeset.places]
