"""Exact arithmetic in Z[zeta_p] and Q(zeta_p) for an odd prime p.

Elements are integer coefficient vectors of length p-1 on the power basis
1, zeta, ..., zeta^(p-2), kept canonical through the relation
zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).  These carry the Gauss and
Kloosterman sums exactly; complex embeddings are only taken at the very end,
when angles or float statistics are wanted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadEmbeddingIndex, MixedPrimes, NotRational

Infinite = math.inf


@dataclass(frozen=True)
class ComplexApprox:
    """A double-precision image of a cyclotomic number under one embedding."""

    re: float
    im: float
    embedding_index: int

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


class CycInt:
    """Element of Z[zeta_p] in canonical form."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        coeffs = tuple(coeffs)
        if len(coeffs) > p - 1:
            raise ValueError("coefficient vector longer than p-1")
        object.__setattr__(self, "p", p)
        object.__setattr__(
            self, "coeffs", coeffs + (0,) * (p - 1 - len(coeffs))
        )

    def __setattr__(self, *args):  # immutable
        raise AttributeError("CycInt is immutable")

    @classmethod
    def from_int(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,))

    @classmethod
    def from_zeta_powers(cls, p: int, amounts) -> "CycInt":
        """Build sum(amounts[i] * zeta^i) from a length-p list of exponent weights."""
        amounts = list(amounts) + [0] * (p - len(amounts))
        top = amounts[p - 1]
        return cls(p, tuple(amounts[i] - top for i in range(p - 1)))

    def _check(self, other: "CycInt"):
        if self.p != other.p:
            raise MixedPrimes(f"p = {self.p} vs p = {other.p}")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        p = self.p
        n = p - 1
        conv = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        # reduce X^m for m >= p-1 via X^(p-1) = -(1 + X + ... + X^(p-2))
        for m in range(2 * n - 2, n - 1, -1):
            v = conv[m]
            if v:
                conv[m] = 0
                base = m - n
                for j in range(n):
                    conv[base + j] -= v
        return CycInt(p, tuple(conv[:n]))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative power of a cyclotomic integer")
        result = CycInt.from_int(self.p, 1)
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycInt(p={self.p}, {self.coeffs})"

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def galois_conjugate(self, k: int) -> "CycInt":
        """Apply zeta -> zeta^k for k coprime to p."""
        p = self.p
        if math.gcd(k, p) != 1:
            raise ValueError("conjugation index must be coprime to p")
        amounts = [0] * p
        for i, c in enumerate(self.coeffs):
            amounts[(i * k) % p] += c
        return CycInt.from_zeta_powers(p, amounts)

    def conjugates(self):
        return [self.galois_conjugate(k) for k in range(1, self.p)]

    def complex_embedding(self, k: int = 1) -> ComplexApprox:
        """Image under zeta -> exp(2*pi*i*k/p), via compensated summation."""
        p = self.p
        if not 1 <= k <= p - 1:
            raise BadEmbeddingIndex(f"embedding index {k} not in 1..{p - 1}")
        sre = sim = cre = cim = 0.0  # Kahan running sums and compensations
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            ang = 2.0 * math.pi * ((k * i) % p) / p
            fc = float(c)
            for term, is_re in ((fc * math.cos(ang), True), (fc * math.sin(ang), False)):
                if is_re:
                    y = term - cre
                    t = sre + y
                    cre = (t - sre) - y
                    sre = t
                else:
                    y = term - cim
                    t = sim + y
                    cim = (t - sim) - y
                    sim = t
        return ComplexApprox(sre, sim, k)

    def as_rational_integer(self) -> int:
        """Return the plain integer this element equals, or raise NotRational."""
        if any(self.coeffs[1:]):
            raise NotRational(self.coeffs)
        return self.coeffs[0]

    def content(self) -> int:
        return math.gcd(*self.coeffs) if any(self.coeffs) else 0

    def serialize(self) -> dict:
        return {"p": self.p, "coeffs": [str(c) for c in self.coeffs]}


def zeta(p: int, i: int = 1) -> CycInt:
    """The root of unity zeta_p^i as a CycInt."""
    amounts = [0] * p
    amounts[i % p] = 1
    return CycInt.from_zeta_powers(p, amounts)


def ord_one_minus_zeta(x: CycInt):
    """Exact valuation of x at the prime (1 - zeta_p); Infinite for x = 0.

    Division by (1 - zeta) is exact: writing x = y*(1 - zeta) and solving the
    triangular system gives y_i = (x_0 + ... + x_i) - (i+1)*s/p with
    s = sum(x_i), which is integral precisely when p divides s.
    """
    if x.is_zero():
        return Infinite
    p = x.p
    coeffs = list(x.coeffs)
    v = 0
    while True:
        s = sum(coeffs)
        if s % p:
            return v
        sdiv = s // p
        prefix = 0
        nxt = []
        for i, c in enumerate(coeffs):
            prefix += c
            nxt.append(prefix - (i + 1) * sdiv)
        coeffs = nxt
        v += 1


def ord_q_normalized(x: CycInt, f: int):
    """Valuation of x normalised so that ord(q) = 1 for q = p^f."""
    v = ord_one_minus_zeta(x)
    if v is Infinite:
        return Infinite
    return Fraction(v, f * (x.p - 1))


class CycRat:
    """Element of Q(zeta_p) with a rational-integer denominator.

    Denominators occurring here are always powers of q, so a full fraction
    field over Z[zeta_p] is unnecessary.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: CycInt, denominator: int = 1):
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        c = numerator.content()
        if c:
            g = math.gcd(c, denominator)
            if g > 1:
                numerator = CycInt(numerator.p, tuple(a // g for a in numerator.coeffs))
                denominator //= g
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, *args):
        raise AttributeError("CycRat is immutable")

    @property
    def p(self):
        return self.numerator.p

    def __mul__(self, other):
        if isinstance(other, CycRat):
            return CycRat(self.numerator * other.numerator, self.denominator * other.denominator)
        if isinstance(other, CycInt):
            return CycRat(self.numerator * other, self.denominator)
        if isinstance(other, int):
            return CycRat(self.numerator * other, self.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, CycInt)):
            other = CycRat(self.numerator._coerce(other) if isinstance(other, int) else other)
        if not isinstance(other, CycRat):
            return NotImplemented
        return CycRat(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __eq__(self, other):
        if not isinstance(other, CycRat):
            return NotImplemented
        return (
            self.numerator == other.numerator and self.denominator == other.denominator
        )

    def __repr__(self):
        return f"CycRat({self.numerator!r} / {self.denominator})"

    def as_fraction(self) -> Fraction:
        """Exact rational value; raises NotRational if a zeta part survives."""
        return Fraction(self.numerator.as_rational_integer(), self.denominator)
