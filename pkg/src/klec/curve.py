"""The curve family y^2 = x^3 + (t^(q^a) - t) x^2 + gamma x over F_q(t):
closed-form invariants, bad-reduction bookkeeping, torsion, and the
2-isogeny image identity.

Reduction types are not recomputed (no Tate algorithm here); the fixed fiber
table {I_1 at each finite bad place, I*_{4q^a} at infinity} is hard-coded and
every arithmetic consequence of it is checked instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FieldElem, FieldSpec, Poly, artin_schreier_poly, is_squarefree
from .errors import EvenCharacteristic, NonSquarefreeDiscriminant, ZeroGamma


@dataclass(frozen=True)
class CurveParams:
    field: FieldSpec
    gamma: FieldElem
    a: int

    def __post_init__(self):
        if self.field.p == 2:
            raise EvenCharacteristic("the family needs odd characteristic")
        if self.gamma.code == 0:
            raise ZeroGamma("gamma must be nonzero")
        if self.gamma.field != self.field:
            raise ValueError("gamma must live in the base field")
        if self.a < 1:
            raise ValueError("level a must be >= 1")

    @property
    def q(self) -> int:
        return self.field.q

    def wp(self) -> Poly:
        return artin_schreier_poly(self.field, self.a)

    def label(self) -> dict:
        return {"q": self.q, "gamma": self.gamma.code, "a": self.a}


@dataclass(frozen=True)
class FiberData:
    kodaira: str
    delta: int  # order of the minimal discriminant at the place
    conductor_exponent: int


@dataclass(frozen=True)
class CurveInvariants:
    j_num: Poly
    j_den: Poly
    disc: Poly
    logq_H: int
    logq_N: int
    tamagawa: int
    b_degree: int
    torsion_order: int


@dataclass(frozen=True)
class BadReductionReport:
    finite_places_degree_sum: int
    squarefree: bool
    infinite_fiber: FiberData
    finite_fiber_type: str


def _disc_quadratic(params: CurveParams) -> Poly:
    """wp_a(t)^2 - 4*gamma, the interesting factor of the discriminant."""
    F = params.field
    wp = params.wp()
    four_gamma = F.mul(F.log_to_unit(4 % F.p), params.gamma.code)
    return wp * wp - Poly.constant(F, FieldElem(F, four_gamma))


def curve_invariants(params: CurveParams) -> CurveInvariants:
    """All closed-form invariants, with their consistency identities asserted."""
    F = params.field
    q, a = params.q, params.a
    wp = params.wp()
    gamma = params.gamma

    wp2 = wp * wp
    three_gamma = Poly.constant(F, gamma * 3)
    core_num = wp2 - three_gamma
    core_den = _disc_quadratic(params)
    j_num = (core_num**3) * FieldElem(F, F.log_to_unit(256 % F.p))
    j_den = core_den * (gamma * gamma)
    # coprimality of the cores implies j_num/j_den is already in lowest terms
    assert core_num.gcd(core_den).degree() == 0

    disc = core_den * (gamma * gamma * FieldElem(F, F.log_to_unit(16 % F.p)))
    assert disc.degree() == 2 * q**a
    if not is_squarefree(disc):
        raise NonSquarefreeDiscriminant("model discriminant is not squarefree")

    logq_H = (q**a + 1) // 2
    logq_N = 2 * (q**a + 1)
    assert logq_N == 4 * logq_H  # height is the fourth root of the conductor
    assert 12 * logq_H == 2 * q**a + (4 * q**a + 6)
    return CurveInvariants(
        j_num=j_num,
        j_den=j_den,
        disc=disc,
        logq_H=logq_H,
        logq_N=logq_N,
        tamagawa=4,
        b_degree=2 * (q**a - 1),
        torsion_order=2,
    )


def j_invariants_equal(inv1: CurveInvariants, inv2: CurveInvariants) -> bool:
    """Equality of j as reduced rational functions (cross-multiplied, exact)."""
    return inv1.j_num * inv2.j_den == inv2.j_num * inv1.j_den


def bad_places_report(params: CurveParams) -> BadReductionReport:
    """Degree bookkeeping for the places of bad reduction.

    The finite bad places are exactly the divisors of wp_a^2 - 4*gamma; since
    that polynomial is squarefree their degrees sum to its degree, with no
    factorization needed.
    """
    q, a = params.q, params.a
    core = _disc_quadratic(params)
    squarefree = is_squarefree(core)
    if not squarefree:
        raise NonSquarefreeDiscriminant(
            "wp_a^2 - 4*gamma must be squarefree in odd characteristic"
        )
    degree_sum = core.degree()
    assert degree_sum == 2 * q**a
    infinite = FiberData(kodaira=f"I*_{4 * q**a}", delta=4 * q**a + 6, conductor_exponent=2)
    assert degree_sum + infinite.delta == 12 * ((q**a + 1) // 2)
    return BadReductionReport(
        finite_places_degree_sum=degree_sum,
        squarefree=squarefree,
        infinite_fiber=infinite,
        finite_fiber_type="I_1 at each monic irreducible divisor of wp_a^2 - 4*gamma",
    )


POINT_AT_INFINITY = None


def torsion_structure(params: CurveParams):
    """The K-rational torsion: the origin and the 2-torsion point (0, 0).

    The other two 2-torsion x-coordinates are the roots of
    x^2 + wp_a x + gamma, rational over K exactly when wp_a^2 - 4*gamma is a
    square in F_q[t]; squarefreeness of that degree-2q^a polynomial rules
    this out.
    """
    F = params.field
    zero = Poly(F, ())
    # (0, 0) lies on the model: x = 0 kills every term of x^3 + wp x^2 + gamma x
    assert (zero**3 + params.wp() * zero**2 + zero * params.gamma).is_zero()
    core = _disc_quadratic(params)
    assert core.degree() == 2 * params.q**params.a > 0
    if not is_squarefree(core):
        raise NonSquarefreeDiscriminant("2-torsion analysis needs squarefreeness")
    return [POINT_AT_INFINITY, (zero, zero)]


# ---------------------------------------------------------------------------
# 2-isogeny image identity, verified as a polynomial identity


class _MPoly:
    """Tiny dense-dict polynomial in (x, w, g) over a FieldSpec; just enough
    to expand the isogeny identity."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms=None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def var(cls, field, which: str):
        e = {"x": (1, 0, 0), "w": (0, 1, 0), "g": (0, 0, 1)}[which]
        return cls(field, {e: 1})

    @classmethod
    def const(cls, field, code: int):
        return cls(field, {(0, 0, 0): code})

    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = F.add(out.get(k, 0), v)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _MPoly(F, out)

    def __neg__(self):
        F = self.field
        return _MPoly(F, {k: F.neg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        out: dict = {}
        for (i1, j1, k1), v1 in self.terms.items():
            for (i2, j2, k2), v2 in other.terms.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                s = F.add(out.get(key, 0), F.mul(v1, v2))
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return _MPoly(F, out)

    def __pow__(self, e: int):
        r = _MPoly.const(self.field, 1)
        for _ in range(e):
            r = r * self
        return r

    def is_zero(self):
        return not self.terms


def isogeny_identity_check(params: CurveParams | None = None, field: FieldSpec | None = None) -> bool:
    """Check that the degree-2 map lands on y^2 = (X + wp)(X^2 - 4*gamma).

    With y^2 reduced by the model, X = x + gamma/x and Y = y (1 - gamma/x^2);
    clearing denominators by x^4 turns the image equation into the polynomial
    identity A = B with

        A = (x^3 + w x^2 + g x) * (x^2 - g)^2
        B = x * (x^2 + w x + g) * ((x^2 + g)^2 - 4 g x^2)

    Both sides are expanded mechanically in F_q[x, w] (g = gamma concrete)
    or F_q[x, w, g] (g symbolic, when called with a bare field).
    """
    if params is not None:
        F = params.field
        g = _MPoly.const(F, params.gamma.code)
    else:
        F = field
        g = _MPoly.var(F, "g")
    x = _MPoly.var(F, "x")
    w = _MPoly.var(F, "w")
    four = _MPoly.const(F, F.log_to_unit(4 % F.p))

    lhs = (x**3 + w * x**2 + g * x) * (x**2 - g) ** 2
    rhs = x * (x**2 + w * x + g) * ((x**2 + g) ** 2 - four * g * x**2)
    return (lhs - rhs).is_zero()
