"""Finite fields F_{p^f} of odd characteristic with full discrete-log tables,
polynomial utilities over them, and enumeration of the places of P^1 with
degree dividing a given level.

Every field is an independent quotient F_p[X]/(m) with a canonical
(first-in-code-order) irreducible modulus; elements are stored as integer
codes sum(c_i * p^i) over the power basis.  Fields small enough to tabulate
(the only ones this library ever touches) carry exp/log, Zech-logarithm and
absolute-trace tables, shared with the compiled kernels as numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from .errors import (
    BudgetExceeded,
    EvenCharacteristic,
    NonPrimeCharacteristic,
    NotASubfield,
    ReducibleModulus,
)

TABLE_LIMIT = 1 << 21  # largest field cardinality we are willing to tabulate
DEFAULT_BUDGET = 10**9  # fundamental-operation cap for enumeration loops


# ---------------------------------------------------------------------------
# small integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def mobius(n: int) -> int:
    mu = 1
    for ell in prime_factors(n):
        if n % (ell * ell) == 0:
            return 0
        mu = -mu
    return mu


def necklace_count(q: int, d: int) -> int:
    """Number of monic irreducible polynomials of degree d over F_q."""
    total = sum(mobius(e) * q ** (d // e) for e in divisors(d))
    assert total % d == 0
    return total // d


# ---------------------------------------------------------------------------
# bare polynomial arithmetic over F_p (integer-list coefficients), used only
# to bootstrap field construction before any tables exist


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus
    dm = len(mod) - 1
    for k in range(len(prod) - 1, dm - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(dm):
                prod[k - dm + i] = (prod[k - dm + i] - c * mod[i]) % p
    return _poly_trim(prod)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = a[:]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _code_to_vec(code: int, p: int, f: int) -> list[int]:
    out = []
    for _ in range(f):
        out.append(code % p)
        code //= p
    return out


def _vec_to_code(vec, p: int) -> int:
    code = 0
    for c in reversed(vec):
        code = code * p + c
    return code


# ---------------------------------------------------------------------------
# the field type


_FIELD_CACHE: dict = {}


class FieldSpec:
    """A tabulated finite field F_{p^f}."""

    def __init__(self, p: int, f: int, modulus: tuple[int, ...]):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = modulus
        self.M = self.q - 1  # order of the multiplicative group
        self.SENT = self.M  # log-domain sentinel for the zero element
        self._embeddings: dict = {}
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Multiplication of codes before exp/log tables exist."""
        if a == 0 or b == 0:
            return 0
        if self.f == 1:
            return a * b % self.p
        va = _code_to_vec(a, self.p, self.f)
        vb = _code_to_vec(b, self.p, self.f)
        return _vec_to_code(_poly_mulmod(va, vb, list(self.modulus), self.p), self.p)

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        factors = prime_factors(self.M) if self.M > 1 else []
        for cand in range(2, self.q):
            if all(self._pow_raw(cand, self.M // ell) != 1 for ell in factors):
                return cand
        raise AssertionError("no generator found")  # pragma: no cover

    def _build_tables(self):
        p, f, q, M = self.p, self.f, self.q, self.M
        self.generator = self._find_generator()
        exp = [0] * M
        log = [M] * q  # log[0] stays the sentinel
        x = 1
        for k in range(M):
            exp[k] = x
            log[x] = k
            x = self._mul_raw(x, self.generator)
        assert x == 1, "generator order mismatch"
        self.exp = exp
        self.log = log
        self.exp_np = np.array(exp, dtype=np.int64)
        self.log_np = np.array(log, dtype=np.int64)

        # Zech logarithms: zech[k] = log(1 + g^k), sentinel where 1 + g^k = 0
        c0 = self.exp_np % p
        plus_one = self.exp_np - c0 + (c0 + 1) % p
        self.zech_np = self.log_np[plus_one]
        self.zech = self.zech_np.tolist()
        self.neg_one_log = M // 2 if M >= 2 else 0  # g^(M/2) = -1 in odd char

        # absolute trace to F_p, by linearity over the basis traces
        if f == 1:
            trace = np.arange(q, dtype=np.int64)
        else:
            basis_tr = []
            for i in range(f):
                k = log[p**i]  # log of X^i
                t = 0
                for j in range(f):
                    t = self.add(t, exp[(k * p**j) % M])
                assert t < p, "trace landed outside the prime field"
                basis_tr.append(t)
            codes = np.arange(q, dtype=np.int64)
            acc = np.zeros(q, dtype=np.int64)
            tmp = codes.copy()
            for i in range(f):
                acc += (tmp % p) * basis_tr[i]
                tmp //= p
            trace = acc % p
        self.trace_to_prime = trace
        self.trace_by_log = np.concatenate(
            [trace[self.exp_np], np.zeros(1, dtype=np.int64)]
        ).astype(np.int64)

    # -- scalar code arithmetic ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.f == 1:
            return (a + b) % p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.f == 1:
            return (p - a) % p
        out = 0
        mult = 1
        while a:
            out += (-a % p) % p * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % self.M]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.exp[(-self.log[a]) % self.M]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroDivisionError("negative power of zero")
        return self.exp[(self.log[a] * e) % self.M]

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(p^i)."""
        return self.pow(a, pow(self.p, i, self.M) if self.M > 1 else 1)

    # -- elements ------------------------------------------------------------

    def elem(self, code: int) -> "FieldElem":
        return FieldElem(self, code % self.q)

    def from_coeffs(self, coeffs) -> "FieldElem":
        vec = [c % self.p for c in coeffs]
        if len(vec) > self.f:
            raise ValueError("too many coefficients for this field")
        return FieldElem(self, _vec_to_code(vec, self.p))

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def elements(self):
        return (FieldElem(self, c) for c in range(self.q))

    # -- embeddings between independently constructed fields -----------------

    def embedding_from(self, sub: "FieldSpec"):
        """Code table of the canonical embedding sub -> self.

        The image of the sub generator basis is fixed by sending the modulus
        root of ``sub`` to its code-least root in ``self``; deterministic, so
        every downstream output is reproducible.
        """
        key = (sub.p, sub.f, sub.modulus)
        hit = self._embeddings.get(key)
        if hit is not None:
            return hit
        if sub.p != self.p or self.f % sub.f != 0:
            raise NotASubfield(f"F_{sub.q} does not embed in F_{self.q}")
        if sub.f == self.f and sub.modulus == self.modulus:
            table = list(range(self.q))
        elif sub.f == 1:
            table = list(range(self.p))  # residues are codes in every F_{p^k}
        else:
            root = self._least_subfield_root(sub)
            powers = [1]
            for _ in range(sub.f - 1):
                powers.append(self.mul(powers[-1], root))
            table = [0] * sub.q
            for code in range(sub.q):
                vec = _code_to_vec(code, self.p, sub.f)
                acc = 0
                for c, rp in zip(vec, powers):
                    if c:
                        acc = self.add(acc, self.mul(self.log_to_unit(c), rp))
                table[code] = acc
        section = {big: small for small, big in enumerate(table)}
        pair = (table, section)
        self._embeddings[key] = pair
        return pair

    def log_to_unit(self, c: int) -> int:
        """Prime-field residue c as a code of this field (identity map)."""
        return c % self.p

    def _least_subfield_root(self, sub: "FieldSpec") -> int:
        # the subfield of size sub.q inside self is {0} plus the powers of
        # g^(M / (sub.q - 1)); scan it in increasing code order
        step = self.M // (sub.q - 1) if sub.q > 1 else self.M
        candidates = sorted(self.exp[k] for k in range(0, self.M, step))
        mod = list(sub.modulus)
        for code in candidates:
            acc = 0
            for c in reversed(mod):
                acc = self.add(self.mul(acc, code), c % self.p)
            if acc == 0:
                return code
        raise NotASubfield("modulus of the subfield has no root here")

    # -- misc -----------------------------------------------------------------

    def __repr__(self):
        return f"FieldSpec(p={self.p}, f={self.f}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.f, self.modulus) == (other.p, other.f, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.f, self.modulus))

    def serialize(self) -> dict:
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}


@total_ordering
class FieldElem:
    """Element of a FieldSpec, stored as an integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    def _check(self, other):
        if isinstance(other, int):
            return FieldElem(self.field, other % self.field.p)
        if not isinstance(other, FieldElem) or other.field is not self.field:
            if isinstance(other, FieldElem) and other.field == self.field:
                return other
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.field, self.field.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElem(self.field, self.field.sub(self.code, other.code))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.field, self.field.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElem(self.field, self.field.mul(self.code, self.field.inv(other.code)))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == other % self.field.p and self.code < self.field.p
        return (
            isinstance(other, FieldElem)
            and self.field == other.field
            and self.code == other.code
        )

    def __lt__(self, other):
        return self.code < other.code

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FieldElem({self.code} in F_{self.field.q})"

    def coeff_vector(self) -> list[int]:
        return _code_to_vec(self.code, self.field.p, self.field.f)

    def log(self) -> int:
        if self.code == 0:
            raise ZeroDivisionError("log of zero")
        return self.field.log[self.code]

    def trace_to_prime(self) -> int:
        return int(self.field.trace_to_prime[self.code])


def build_field(p: int, f: int, modulus=None) -> FieldSpec:
    """Construct (or fetch from cache) the field F_{p^f}.

    With ``modulus`` omitted, the canonical modulus is the first monic
    irreducible of degree f in code order (the polynomial X for f = 1).
    """
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is out of scope")
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    if p**f > TABLE_LIMIT:
        raise BudgetExceeded(f"field of size {p}^{f} exceeds the table limit")

    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree f")
    key = (p, f, modulus)
    hit = _FIELD_CACHE.get(key)
    if hit is not None:
        return hit

    canonical = modulus is None
    if canonical:
        modulus = _canonical_modulus(p, f)
        hit = _FIELD_CACHE.get((p, f, modulus))
        if hit is not None:
            _FIELD_CACHE[key] = hit
            return hit
    elif f == 1:
        if modulus != (0, 1):
            raise ReducibleModulus("prime fields use the modulus X")
    elif not _is_irreducible_over_prime(list(modulus), p):
        raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")

    field = FieldSpec(p, f, modulus)
    _FIELD_CACHE[(p, f, modulus)] = field
    if canonical:
        _FIELD_CACHE[(p, f, None)] = field
    return field


def _canonical_modulus(p: int, f: int) -> tuple[int, ...]:
    if f == 1:
        return (0, 1)
    for code in range(p**f):
        cand = _code_to_vec(code, p, f) + [1]
        if _is_irreducible_over_prime(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible modulus found")  # pragma: no cover


def _is_irreducible_over_prime(poly: list[int], p: int) -> bool:
    """Deterministic irreducibility test for a monic poly over F_p:
    X^(p^d) = X mod B together with gcd(X^(p^(d/l)) - X, B) = 1 for primes l | d.
    """
    d = len(poly) - 1
    if d == 1:
        return True
    if poly[0] == 0:  # divisible by X
        return False
    x = [0, 1]
    frob = _poly_powmod(x, p**d, poly, p)
    if _poly_trim([(a - b) % p for a, b in zip(frob + [0] * 2, x + [0] * len(frob))]) != []:
        return False
    for ell in prime_factors(d):
        sub = _poly_powmod(x, p ** (d // ell), poly, p)
        diff = [0] * max(len(sub), 2)
        for i, c in enumerate(sub):
            diff[i] = c
        diff[1] = (diff[1] - 1) % p
        diff = _poly_trim(diff)
        if _fp_gcd(diff, poly, p) != [1]:
            return False
    return True


def _fp_gcd(a, b, p):
    a, b = a[:], b[:]
    while b:
        # a mod b
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv_lead % p
            off = len(a) - len(b)
            for i, bc in enumerate(b):
                a[off + i] = (a[off + i] - c * bc) % p
            _poly_trim(a)
        a, b = b, a
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = [c * inv_lead % p for c in a]
    return a


# ---------------------------------------------------------------------------
# polynomials over a FieldSpec


class Poly:
    """Dense polynomial over a FieldSpec; coefficients are element codes.

    Multiplication accumulates over nonzero terms and division walks the
    divisor's support, so the sparse polynomials of the curve family
    (t^(q^a) - t and friends) stay cheap even at large degree.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_terms(cls, field: FieldSpec, terms: dict) -> "Poly":
        if not terms:
            return cls(field, ())
        n = max(terms) + 1
        coeffs = [0] * n
        for e, c in terms.items():
            coeffs[e] = field.add(coeffs[e], c % field.q if isinstance(c, int) else c.code)
        return cls(field, coeffs)

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: FieldSpec, c) -> "Poly":
        code = c.code if isinstance(c, FieldElem) else c % field.p
        return cls(field, (code,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)} over F_{self.field.q})"

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, (int, FieldElem)):
            code = other.code if isinstance(other, FieldElem) else other % F.p
            if code == 0:
                return Poly(F, ())
            return Poly(F, [F.mul(c, code) for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Poly(F, ())
        terms: dict[int, int] = {}
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        prev = terms.get(k, 0)
                        terms[k] = F.add(prev, F.mul(a, b))
        out = [0] * (self.degree() + other.degree() + 1)
        for k, c in terms.items():
            out[k] = c
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        da, db = self.degree(), other.degree()
        if da < db:
            return Poly(F, ()), self
        rem = list(self.coeffs)
        quot = [0] * (da - db + 1)
        lc_inv = F.inv(other.coeffs[-1])
        support = [(i, c) for i, c in enumerate(other.coeffs[:-1]) if c]
        for k in range(da - db, -1, -1):
            c = rem[k + db]
            if c:
                qc = F.mul(c, lc_inv)
                quot[k] = qc
                rem[k + db] = 0
                for i, bc in support:
                    rem[k + i] = F.sub(rem[k + i], F.mul(qc, bc))
        return Poly(F, quot), Poly(F, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self * FieldElem(self.field, self.field.inv(self.leading()))

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(F.mul(c, F.log_to_unit(i % F.p)) if c else 0)
        return Poly(F, out)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def evaluate(self, x: FieldElem) -> FieldElem:
        """Horner evaluation at an element of this field or an extension."""
        big = x.field
        if big == self.field:
            emb = None
        else:
            emb, _ = big.embedding_from(self.field)
        acc = 0
        for c in reversed(self.coeffs):
            cc = c if emb is None else emb[c]
            acc = big.add(big.mul(acc, x.code), cc)
        return FieldElem(big, acc)

    def serialize(self) -> list[int]:
        """Coefficient codes, lowest degree first."""
        return list(self.coeffs)


def artin_schreier_poly(field: FieldSpec, a: int) -> Poly:
    """The polynomial t^(q^a) - t over F_q."""
    return Poly.from_terms(field, {field.q**a: 1, 1: field.neg(1)})


def is_squarefree(poly: Poly) -> bool:
    """gcd with the formal derivative is constant; an identically vanishing
    derivative on a nonconstant polynomial means a p-th power factor."""
    if poly.is_zero():
        raise ValueError("squarefreeness of the zero polynomial")
    if poly.degree() <= 0:
        return True
    deriv = poly.derivative()
    if deriv.is_zero():
        return False
    return poly.gcd(deriv).degree() == 0


def is_irreducible(poly: Poly) -> bool:
    """Criterion: X^(q^d) = X mod B and gcd(X^(q^(d/l)) - X, B) = 1 for l | d."""
    F = poly.field
    d = poly.degree()
    if d < 1 or not poly.is_monic():
        raise ValueError("test expects a monic polynomial of degree >= 1")
    if d == 1:
        return True
    x = Poly.x(F)

    def powmod(e: int) -> Poly:
        result = Poly.constant(F, 1)
        base = x
        while e:
            if e & 1:
                result = (result * base) % poly
            base = (base * base) % poly
            e >>= 1
        return result

    if powmod(F.q**d) != x % poly:
        return False
    for ell in prime_factors(d):
        if poly.gcd(powmod(F.q ** (d // ell)) - x).degree() != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# quadratic character and traces


def quadratic_character(x: FieldElem) -> int:
    """lambda(x) in {-1, 0, +1}: parity of the discrete log, with lambda(0) = 0."""
    if x.code == 0:
        return 0
    return 1 - 2 * (x.field.log[x.code] & 1)


def relative_trace(x: FieldElem, subfield: FieldSpec) -> FieldElem:
    """Trace of x down to the subfield: sum of x^(q0^i)."""
    big = x.field
    if big.p != subfield.p or big.f % subfield.f != 0:
        raise NotASubfield(f"F_{subfield.q} is not a subfield of F_{big.q}")
    m = big.f // subfield.f
    q0 = subfield.q
    acc = 0
    for i in range(m):
        acc = big.add(acc, big.pow(x.code, q0**i) if x.code else 0)
    _, section = big.embedding_from(subfield)
    if acc not in section:
        raise AssertionError("trace escaped the subfield")  # pragma: no cover
    return FieldElem(subfield, section[acc])


# ---------------------------------------------------------------------------
# places


@dataclass(frozen=True)
class Place:
    """A finite place != t: a monic irreducible over F_q with a chosen root."""

    poly: Poly
    degree: int
    beta: FieldElem  # deterministic representative root, in F_{q^degree}

    def __post_init__(self):
        if self.beta.code == 0:
            raise ValueError("the place t (root 0) is excluded")
        if self.poly.evaluate(self.beta).code != 0:
            raise AssertionError("beta is not a root of the place polynomial")

    @property
    def residue_field(self) -> FieldSpec:
        return self.beta.field

    def conjugate_roots(self) -> list[FieldElem]:
        Fv = self.beta.field
        q = self.poly.field.q
        out = []
        c = self.beta.code
        for _ in range(self.degree):
            out.append(FieldElem(Fv, c))
            c = Fv.pow(c, q)
        assert len({e.code for e in out}) == self.degree
        return out

    def sort_key(self):
        return (self.degree, self.poly.coeffs)


@dataclass(frozen=True)
class PlaceSet:
    field: FieldSpec
    a: int
    places: tuple[Place, ...]

    @property
    def count(self) -> int:
        return len(self.places)

    def degree_sum(self) -> int:
        return sum(v.degree for v in self.places)


def extension_field(base: FieldSpec, d: int) -> FieldSpec:
    """F_{q^d} as an independent canonical-modulus field."""
    if d == 1:
        return base
    return build_field(base.p, base.f * d)


def _exact_degree_orbits(base: FieldSpec, d: int):
    """Representative logs (least code in orbit) of the Frobenius orbits of
    exact degree d on the multiplicative group of F_{q^d}."""
    ext = extension_field(base, d)
    M = ext.M
    q = base.q
    visited = bytearray(M)
    reps = []
    for k in range(M):
        if visited[k]:
            continue
        orbit = []
        j = k
        while True:
            orbit.append(j)
            visited[j] = 1
            j = (j * q) % M
            if j == k:
                break
        if len(orbit) == d:
            reps.append(min(orbit, key=lambda t: ext.exp[t]))
    return ext, reps


def _minimal_polynomial(base: FieldSpec, ext: FieldSpec, beta_log: int, d: int) -> Poly:
    """Product of (X - conjugate) with coefficients mapped back to the base."""
    M = ext.M
    q = base.q
    mp = [1]
    for i in range(d):
        root = ext.exp[(beta_log * pow(q, i, M)) % M]
        nxt = [0] * (len(mp) + 1)
        for j, c in enumerate(mp):
            nxt[j + 1] = ext.add(nxt[j + 1], c)
            nxt[j] = ext.sub(nxt[j], ext.mul(c, root))
        mp = nxt
    _, section = ext.embedding_from(base)
    out = []
    for c in mp:
        if c not in section:
            raise AssertionError("minimal polynomial escaped the base field")
        out.append(section[c])
    return Poly(base, out)


def places_P(field: FieldSpec, a: int, budget: int = DEFAULT_BUDGET) -> PlaceSet:
    """All places v != 0, infinity of degree dividing a, each with its
    code-least representative root."""
    if a < 1:
        raise ValueError("level must be >= 1")
    if field.q**a > min(TABLE_LIMIT, budget):
        raise BudgetExceeded(f"place enumeration for q^a = {field.q}^{a}")
    places = []
    pi_by_degree = {}
    for d in divisors(a):
        ext, reps = _exact_degree_orbits(field, d)
        count_d = 0
        for k in reps:
            beta = FieldElem(ext, ext.exp[k])
            poly = _minimal_polynomial(field, ext, k, d)
            places.append(Place(poly, d, beta))
            count_d += 1
        pi_by_degree[d] = count_d + (1 if d == 1 else 0)  # add back the place t
    places.sort(key=Place.sort_key)
    ps = PlaceSet(field, a, tuple(places))

    q = field.q
    assert ps.degree_sum() == q**a - 1, "degree sum must partition G_m(F_{q^a})"
    for d, pi in pi_by_degree.items():
        assert pi == necklace_count(q, d)
        assert q**d / d - q ** (d / 2) <= pi <= q**d / d
    return ps


def enumerate_irreducibles(field: FieldSpec, d: int) -> list[Poly]:
    """All monic irreducibles of degree d over F_q, in coefficient-code order."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        polys = [Poly(field, (field.neg(c), 1)) for c in range(field.q)]
    else:
        if field.q**d > TABLE_LIMIT:
            raise BudgetExceeded(f"irreducible enumeration at q^d = {field.q}^{d}")
        ext, reps = _exact_degree_orbits(field, d)
        polys = [_minimal_polynomial(field, ext, k, d) for k in reps]
    polys.sort(key=lambda P: P.coeffs)
    assert len(polys) == necklace_count(field.q, d)
    return polys
