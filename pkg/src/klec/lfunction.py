"""The L-polynomial of a family curve, assembled two independent ways.

Closed form: the product over places of degree dividing a of
1 - g(v) Kl_gamma(v) T^deg(v) + g(v)^2 q^deg(v) T^(2 deg v), expanded with
exact cyclotomic coefficients; every final coefficient must collapse to a
rational integer.

Oracles: (i) the double character sum over F_{q^n} x F_{q^n} giving the
power sums of the inverse roots, and (ii) plain point counts a_v over all
places of small degree with the Euler product expanded as a power series.
Neither oracle touches the Gauss/Kloosterman machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import kernels
from ._kernels_py import _vadd
from .algebra import (
    DEFAULT_BUDGET,
    FieldElem,
    Poly,
    extension_field,
    places_P,
)
from .charsums import all_place_sums
from .curve import CurveParams
from .cyclotomic import CycInt
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    NoFunctionalEquation,
    RootFindingFailure,
)


@dataclass(frozen=True)
class LPolynomial:
    """Integer polynomial c_0 + c_1 T + ... + c_b T^b with c_0 = 1."""

    q: int
    coeffs: tuple[int, ...]

    @property
    def b(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def central_value(self) -> Fraction:
        return self.evaluate(Fraction(1, self.q))

    def serialize(self) -> dict:
        return {"q": self.q, "coeffs": [str(c) for c in self.coeffs]}


def default_n_max(q: int, budget: int = DEFAULT_BUDGET) -> int:
    """Largest n with q^(2n) within the operation budget."""
    n = 1
    while q ** (2 * (n + 1)) <= budget:
        n += 1
    return n


# ---------------------------------------------------------------------------
# closed form


def closed_form_lpolynomial(
    params: CurveParams,
    workers: int = 1,
    character_scale: FieldElem | None = None,
    budget: int = DEFAULT_BUDGET,
) -> LPolynomial:
    """Expand the per-place product with CycInt coefficients.

    Intermediate partial products are genuinely irrational; rationality is
    asserted only on the final coefficients.
    """
    F = params.field
    q, a, p = params.q, params.a, F.p
    b = 2 * (q**a - 1)
    ps = places_P(F, a, budget)
    sums = all_place_sums(ps, params.gamma, workers, character_scale)

    one = CycInt.from_int(p, 1)
    zero = CycInt.from_int(p, 0)
    coeffs = [one] + [zero] * b
    deg = 0
    for place, gv, kv in sums:
        d = place.degree
        lin = gv.value * kv.value  # subtracted at offset d
        quad = gv.value * gv.value * (q**d)  # added at offset 2d
        new_deg = deg + 2 * d
        for k in range(new_deg, -1, -1):
            acc = coeffs[k]
            if k >= d and not (c1 := coeffs[k - d]).is_zero():
                acc = acc - lin * c1
            if k >= 2 * d and not (c2 := coeffs[k - 2 * d]).is_zero():
                acc = acc + quad * c2
            coeffs[k] = acc
        deg = new_deg
    assert deg == b
    ints = [c.as_rational_integer() for c in coeffs]  # NotRational = bug trap
    assert ints[0] == 1
    return LPolynomial(q, tuple(ints))


# ---------------------------------------------------------------------------
# oracle 1: the double character sum (power sums of inverse roots)


def oracle_log_coeffs(
    params: CurveParams,
    n_max: int | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> list[int]:
    """c_n = sum over tau, x in F_{q^n} of lambda(x^3 + (tau^(q^a) - tau) x^2 + gamma x),
    for n = 1..n_max.  Independent of the closed form: no Gauss/Kloosterman
    values enter, only point counting compressed through the fiber histogram
    of tau -> tau^(q^a) - tau.

    The outer loop over fiber values splits across a thread pool (the
    compiled kernel releases the GIL); the reduction is an exact integer sum,
    so the result is independent of scheduling.
    """
    F = params.field
    q, a = params.q, params.a
    if n_max is None:
        n_max = default_n_max(q, budget)
    out = []
    for n in range(1, n_max + 1):
        if q ** (2 * n) > budget:
            raise BudgetExceeded(f"oracle at n = {n} needs q^(2n) = {q ** (2 * n)} ops")
        ext = extension_field(F, n)
        M = ext.M
        emb, _ = ext.embedding_from(F)
        gamma_log = ext.log[emb[params.gamma.code]]
        e = pow(q, a, M)
        k = np.arange(M, dtype=np.int64)
        w_all = _vadd((k * e) % M, (k + M // 2) % M, ext.zech_np, M)
        w_all = np.concatenate([w_all, np.array([M], dtype=np.int64)])  # tau = 0
        w_logs, w_counts = np.unique(w_all, return_counts=True)

        def chunk_sum(slc, gamma_log=gamma_log, M=M, ext=ext):
            return kernels.power_sum_over_w(
                np.ascontiguousarray(w_logs[slc]),
                np.ascontiguousarray(w_counts[slc]),
                gamma_log,
                M,
                ext.zech_np,
            )

        if workers > 1 and len(w_logs) >= 2 * workers:
            from concurrent.futures import ThreadPoolExecutor

            bounds = np.linspace(0, len(w_logs), workers + 1, dtype=int)
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = pool.map(chunk_sum, [slice(lo, hi) for lo, hi in zip(bounds, bounds[1:])])
            c_n = sum(parts)
        else:
            c_n = chunk_sum(slice(None))
        assert abs(c_n) <= 2 * (q**a - 1) * q ** ((3 * n + 1) // 2)  # crude Weil cap
        out.append(int(c_n))
    return out


# ---------------------------------------------------------------------------
# oracle 2: plain point counts and the Euler product


@dataclass(frozen=True)
class PlaceCount:
    poly: Poly
    degree: int
    a_v: int
    good_reduction: bool


def _irreducibles_with_roots(field, d: int):
    """(monic irreducible, least root) pairs of degree d, including t."""
    from .algebra import _exact_degree_orbits, _minimal_polynomial

    if d == 1:
        return [
            (Poly(field, (field.neg(c), 1)), FieldElem(field, c)) for c in range(field.q)
        ]
    ext, reps = _exact_degree_orbits(field, d)
    return [
        (_minimal_polynomial(field, ext, k, d), FieldElem(ext, ext.exp[k])) for k in reps
    ]


def oracle_point_counts(
    params: CurveParams, d_max: int | None = None, budget: int = DEFAULT_BUDGET
) -> list[PlaceCount]:
    """a_v = -sum_x lambda(x^3 + wp_a(beta) x^2 + gamma x) for every finite
    place of degree <= d_max (all places, not only those dividing a)."""
    F = params.field
    q, a = params.q, params.a
    if d_max is None:
        d_max = default_n_max(q, budget)
    out = []
    for d in range(1, d_max + 1):
        if q ** (2 * d) > budget:
            raise BudgetExceeded(f"point counts at degree {d}")
        ext = extension_field(F, d)
        emb, _ = ext.embedding_from(F)
        gamma_code = emb[params.gamma.code]
        gamma_log = ext.log[gamma_code]
        four_gamma = ext.mul(ext.log_to_unit(4 % ext.p), gamma_code)
        e = pow(q, a, ext.M)
        for poly, beta in sorted(_irreducibles_with_roots(F, d), key=lambda t: t[0].coeffs):
            w = ext.sub(ext.pow(beta.code, e) if beta.code else 0, beta.code)
            w_log = ext.log[w] if w else ext.M
            a_v = -kernels.curve_lambda_sum(w_log, gamma_log, ext.M, ext.zech_np)
            good = ext.sub(ext.mul(w, w), four_gamma) != 0
            if good:
                assert a_v * a_v <= 4 * q**d, "Hasse bound violated"
            else:
                assert a_v in (-1, 1), "multiplicative place must have a_v = +-1"
            out.append(PlaceCount(poly, d, int(a_v), good))
    return out


def euler_product_truncation(counts: list[PlaceCount], q: int, order: int) -> list[int]:
    """Coefficients of prod_v L_v(T)^(-1) up to T^order, exactly.

    The local inverse factor of 1 - a_v T^d (+ q^d T^(2d)) is supported on
    multiples of d and satisfies r_k = a_v r_{k-d} - q^d r_{k-2d}; the place
    at infinity has additive reduction and contributes the trivial factor.
    """
    series = [0] * (order + 1)
    series[0] = 1
    for pc in counts:
        if pc.degree > order:
            continue
        d = pc.degree
        c = q**d if pc.good_reduction else 0
        r = [0] * (order + 1)
        r[0] = 1
        for k in range(d, order + 1, d):
            r[k] = pc.a_v * r[k - d] - (c * r[k - 2 * d] if k >= 2 * d else 0)
        new = [0] * (order + 1)
        for i, s in enumerate(series):
            if s:
                for j in range(0, order + 1 - i, d):
                    if r[j]:
                        new[i + j] += s * r[j]
        series = new
    return series


# ---------------------------------------------------------------------------
# power sums, reconstruction, functional equation


def log_coeffs_of(L: LPolynomial, n_max: int) -> list[int]:
    """Power sums s_n of the inverse roots via k a_k = -sum_{m<=k} s_m a_{k-m}."""
    a = list(L.coeffs)
    s = []
    for k in range(1, n_max + 1):
        a_k = a[k] if k <= L.b else 0
        acc = -k * a_k
        for m in range(1, k):
            a_km = a[k - m] if k - m <= L.b else 0
            if a_km:
                acc -= s[m - 1] * a_km
        s.append(acc)
    return s


def reconstruct_from_log_coeffs(cs: list[int], b: int, q: int) -> LPolynomial:
    """Rebuild the full polynomial from power sums c_1..c_{b/2} plus at least
    one extra value to settle the functional-equation sign."""
    half = b // 2
    if len(cs) < half:
        raise ValueError(f"need at least {half} power sums, got {len(cs)}")
    a = [1]
    for k in range(1, half + 1):
        acc = cs[k - 1]
        for m in range(1, k):
            acc += cs[m - 1] * a[k - m]
        if acc % k:
            raise ConsistencyError("Newton recurrence produced a non-integer")
        a.append(-acc // k)

    candidates = []
    for eps in (1, -1):
        if eps == -1 and a[half] != 0:
            continue  # sign -1 forces the middle coefficient to vanish
        full = list(a)
        for j in range(half + 1, b + 1):
            full.append(eps * q ** (2 * j - b) * a[b - j])
        candidates.append(LPolynomial(q, tuple(full)))

    matching = [
        L for L in candidates if log_coeffs_of(L, len(cs)) == list(cs)
    ]
    if not matching:
        raise ConsistencyError("no functional-equation completion matches the oracle")
    if len(matching) == 2 and matching[0].coeffs != matching[1].coeffs:
        raise ConsistencyError("oracle data does not determine the sign")
    return matching[0]


def functional_equation_sign(L: LPolynomial) -> int:
    """The sign in c_{b-k} q^k = eps q^(b-k) c_k, checked for every k."""
    b, q, c = L.b, L.q, L.coeffs
    if not any(c):
        raise NoFunctionalEquation("zero polynomial")
    for eps in (1, -1):
        if all(c[b - k] * q**k == eps * q ** (b - k) * c[k] for k in range(b + 1)):
            return eps
    raise NoFunctionalEquation("no sign satisfies the functional equation")


# ---------------------------------------------------------------------------
# Riemann hypothesis check: roots of L(T/q) on the unit circle


def _primes_for_modular_gcd():
    """Deterministic stream of ~30-bit primes (products stay inside int64)."""
    from .algebra import is_prime

    n = (1 << 30) + 3
    while True:
        if is_prime(n):
            yield n
        n += 2


def _gcd_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd of two coefficient arrays (ascending) in F_p, vectorised."""
    a = a[: len(a) - np.argmax(a[::-1] != 0)] if a.any() else a[:0]
    b = b[: len(b) - np.argmax(b[::-1] != 0)] if b.any() else b[:0]
    while len(b):
        while len(a) >= len(b):
            c = a[-1] * pow(int(b[-1]), p - 2, p) % p
            a[-len(b):] = (a[-len(b):] - c * b) % p
            a = a[: len(a) - np.argmax(a[::-1] != 0)] if a.any() else a[:0]
        a, b = b, a
    if len(a):
        a = a * pow(int(a[-1]), p - 2, p) % p
    return a


def _div_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact quotient a/b in F_p[x] (remainder known to vanish)."""
    q = np.zeros(len(a) - len(b) + 1, dtype=np.int64)
    r = a.copy()
    inv = pow(int(b[-1]), p - 2, p)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            r[k : k + len(b)] = (r[k : k + len(b)] - c * b) % p
    return q


def _exact_int_division(num: list[int], den: list[int]):
    """num/den in Z[x] (ascending coefficients), or None if not divisible."""
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        return None
    rem = list(num)
    quot = [0] * (dn - dd + 1)
    lead = den[-1]
    for k in range(dn - dd, -1, -1):
        c, r = divmod(rem[k + dd], lead)
        if r:
            return None
        quot[k] = c
        if c:
            for i, dc in enumerate(den):
                rem[k + i] -= c * dc
    return quot if not any(rem) else None


def _primitive(poly: list[int]) -> list[int]:
    import math as _math

    g = 0
    for c in poly:
        g = _math.gcd(g, c)
    if g == 0:
        return poly
    out = [c // g for c in poly]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def squarefree_part(int_coeffs: list[int]) -> list[int]:
    """The exact squarefree part P/gcd(P, P') of an integer polynomial.

    Computed by modular gcds with CRT reconstruction and then *verified*:
    the candidate S must divide P, the cofactor P/S must divide P', and one
    good prime must certify gcd(S, S') = 1.  Together these prove that S is
    squarefree with exactly the distinct roots of P.
    """
    d = len(int_coeffs) - 1
    if d <= 1:
        return list(int_coeffs)
    deriv = [k * c for k, c in enumerate(int_coeffs)][1:]
    lead = int_coeffs[-1]
    height = max(abs(c) for c in int_coeffs)
    # Mignotte-style cap on the CRT image lead(P/S)*S of the squarefree part
    bound = 4 * abs(lead) * height * (d + 1) * (1 << d)

    prime_iter = _primes_for_modular_gcd()
    best_deg = None
    residues: list[tuple[int, np.ndarray]] = []
    modulus = 1
    attempts = 0
    while modulus <= 2 * bound:
        p = next(prime_iter)
        attempts += 1
        if attempts > 4000:  # pragma: no cover
            raise RootFindingFailure("modular squarefree decomposition failed")
        if lead % p == 0:
            continue
        Pp = np.array([c % p for c in int_coeffs], dtype=np.int64)
        Dp = np.array([c % p for c in deriv], dtype=np.int64)
        g = _gcd_mod_p(Pp.copy(), Dp.copy(), p)
        sp = _div_mod_p(Pp, g, p) if len(g) > 1 else Pp
        sdeg = len(sp) - 1
        if best_deg is None or sdeg > best_deg:
            # larger squarefree degree = smaller gcd = better prime; restart
            best_deg = sdeg
            residues = []
            modulus = 1
        elif sdeg < best_deg:
            continue  # unlucky prime, skip
        sp = sp * pow(int(sp[-1]), p - 2, p) % p * (lead % p) % p
        residues.append((p, sp))
        modulus *= p

    # CRT with symmetric lift
    combined = [0] * (best_deg + 1)
    m = 1
    for p, sp in residues:
        if m == 1:
            combined = [int(c) for c in sp]
            m = p
            continue
        inv = pow(m % p, p - 2, p)
        for i in range(best_deg + 1):
            t = (int(sp[i]) - combined[i]) % p * inv % p
            combined[i] += m * t
        m *= p
    half = m // 2
    combined = [c - m if c > half else c for c in combined]
    S = _primitive(combined)

    cofactor = _exact_int_division(list(int_coeffs), S)
    if cofactor is None:
        raise RootFindingFailure("squarefree candidate does not divide P")
    if len(cofactor) > 1:
        if _exact_int_division(_primitive(deriv), _primitive(cofactor)) is None:
            raise RootFindingFailure("cofactor fails to divide the derivative")
    # certify squarefreeness of S itself over one good prime
    s_deriv = [k * c for k, c in enumerate(S)][1:]
    for _ in range(64):
        p = next(prime_iter)
        if S[-1] % p:
            g = _gcd_mod_p(
                np.array([c % p for c in S], dtype=np.int64),
                np.array([c % p for c in s_deriv], dtype=np.int64),
                p,
            )
            if len(g) == 1:
                return S
    raise RootFindingFailure("no prime certified squarefreeness")  # pragma: no cover


def _aberth_unimodular(int_coeffs: list[int], maxiter: int = 120) -> list:
    """All (simple) roots of an integer polynomial with near-unimodular
    roots, by Aberth-Ehrlich iteration seeded on the unit circle.

    Callers pass the squarefree part, so convergence is cubic; the
    polynomial is lead * prod(T - r_i) with |r_i| = 1, hence no coefficient
    exceeds |lead| 2^n and n + O(1) precision bits bound all rounding noise.
    """
    n = len(int_coeffs) - 1
    if n == 0:
        return []
    bits = n + 192
    with mpmath.workprec(bits):
        coeffs = [mpmath.mpf(c) for c in reversed(int_coeffs)]  # highest first
        deriv = [c * (n - i) for i, c in enumerate(coeffs[:-1])]

        def horner(cs, z):
            acc = mpmath.mpc(0)
            for c in cs:
                acc = acc * z + c
            return acc

        z = [
            mpmath.exp(2j * mpmath.pi * (j + 0.3761) / n) * (1 + mpmath.mpf(1) / 64)
            for j in range(n)
        ]
        tol = mpmath.mpf(2) ** (-100)
        for _ in range(maxiter):
            worst = mpmath.mpf(0)
            for j in range(n):
                pv = horner(coeffs, z[j])
                if pv == 0:
                    continue
                dv = horner(deriv, z[j])
                w = pv / dv if dv != 0 else mpmath.mpc(1e-3)
                ssum = mpmath.mpc(0)
                for i in range(n):
                    if i != j:
                        ssum += 1 / (z[j] - z[i])
                denom = 1 - w * ssum
                delta = w / denom if denom != 0 else w
                z[j] = z[j] - delta
                worst = max(worst, abs(delta))
            if worst < tol:
                return z
        raise RootFindingFailure(f"Aberth iteration stalled at correction {worst}")


def rh_check(L: LPolynomial) -> float:
    """max | |z| - 1 | over the roots of L(T/q), found independently of the
    closed-form factorization."""
    b, q = L.b, L.q
    if b == 0:
        return 0.0
    if b > 1000:
        raise BudgetExceeded(f"root finding for degree {b}")
    # integerize L(T/q): coefficients c_k q^(b-k)
    scaled = [c * q ** (b - k) for k, c in enumerate(L.coeffs)]
    even = all(c == 0 for c in scaled[1::2])
    roots = _aberth_unimodular(squarefree_part(scaled[0::2] if even else scaled))
    with mpmath.workprec(240):
        if even:
            devs = [abs(mpmath.sqrt(abs(u)) - 1) for u in roots]
        else:
            devs = [abs(abs(z) - 1) for z in roots]
        return float(max(devs)) if devs else 0.0


# ---------------------------------------------------------------------------
# Newton polygon


@dataclass(frozen=True)
class NewtonPolygon:
    """Slopes (with ord(q) = 1 normalisation) and multiplicities, ascending."""

    slopes: tuple[tuple[Fraction, int], ...]

    def multiset(self) -> list[Fraction]:
        out = []
        for s, m in self.slopes:
            out.extend([s] * m)
        return out

    def total(self) -> Fraction:
        return sum((s * m for s, m in self.slopes), Fraction(0))


def padic_valuation(n: int, p: int) -> int:
    """v_p(n) for n != 0, stripping p^(2^k) chunks."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        pe, e = p, 1
        while n % (pe * pe) == 0:
            pe, e = pe * pe, 2 * e
        n //= pe
        v += e
    return v


def newton_polygon(L: LPolynomial, p: int, f: int) -> NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)/f) over the nonzero coefficients."""
    pts = [
        (i, Fraction(padic_valuation(c, p), f))
        for i, c in enumerate(L.coeffs)
        if c != 0
    ]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the new chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes: list[tuple[Fraction, int]] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y2 - y1, x2 - x1)
        m = x2 - x1
        if slopes and slopes[-1][0] == s:
            slopes[-1] = (s, slopes[-1][1] + m)
        else:
            slopes.append((s, m))
    return NewtonPolygon(tuple(slopes))
